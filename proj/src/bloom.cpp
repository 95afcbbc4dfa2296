#include "cbf/bloom.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "cbf/errors.hpp"

namespace cbf {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t hash_kmer(const Kmer& x, std::uint64_t seed) {
    std::uint64_t h = mix64(seed ^ (0x9e3779b97f4a7c15ULL * (x.k() + 1u)));
    for (unsigned w = 0; w < x.words_in_use(); ++w)
        h = mix64(h ^ x.code()[w]);
    return h;
}

BloomFilter BloomFilter::create(std::uint64_t n, double r, SeedPair seeds) {
    if (!(r > 0.0))
        throw ParamError("bits per element must be positive, got " +
                         std::to_string(r));
    auto m = static_cast<std::uint64_t>(std::ceil(r * static_cast<double>(n)));
    if (m < 1) m = 1;
    auto h = static_cast<unsigned>(std::llround(r * std::log(2.0)));
    if (h < 1) h = 1;
    return BloomFilter(m, h, seeds, std::vector<std::uint8_t>((m + 7) / 8, 0));
}

BloomFilter BloomFilter::from_raw(std::uint64_t m, unsigned h, SeedPair seeds,
                                  std::vector<std::uint8_t> bits) {
    if (m < 1) throw ParamError("filter bit count must be at least 1");
    if (h < 1) throw ParamError("filter hash count must be at least 1");
    if (bits.size() != (m + 7) / 8)
        throw ParamError("filter bitmap has " + std::to_string(bits.size()) +
                         " bytes, expected " + std::to_string((m + 7) / 8));
    return BloomFilter(m, h, seeds, std::move(bits));
}

void BloomFilter::insert(const Kmer& x) {
    std::uint64_t h1 = hash_kmer(x, seeds_.s1);
    std::uint64_t h2 = hash_kmer(x, seeds_.s2) | 1u;
    for (unsigned i = 0; i < h_; ++i) {
        std::uint64_t pos = (h1 + i * h2) % m_;
        bits_[pos >> 3] |= static_cast<std::uint8_t>(1u << (pos & 7));
    }
    ++n_inserted_;
}

bool BloomFilter::contains(const Kmer& x) const {
    std::uint64_t h1 = hash_kmer(x, seeds_.s1);
    std::uint64_t h2 = hash_kmer(x, seeds_.s2) | 1u;
    for (unsigned i = 0; i < h_; ++i) {
        std::uint64_t pos = (h1 + i * h2) % m_;
        if (!(bits_[pos >> 3] >> (pos & 7) & 1u)) return false;
    }
    return true;
}

double BloomFilter::fill_ratio() const {
    std::uint64_t ones = 0;
    for (std::uint8_t b : bits_) ones += std::popcount(b);
    return static_cast<double>(ones) / static_cast<double>(m_);
}

}  // namespace cbf
