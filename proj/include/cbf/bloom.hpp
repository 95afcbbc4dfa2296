#ifndef CBF_BLOOM_HPP
#define CBF_BLOOM_HPP

#include <cstdint>
#include <vector>

#include "cbf/kmer.hpp"

namespace cbf {

// Two seeds for the double-hashing probe family of one filter.
struct SeedPair {
    std::uint64_t s1 = 0;
    std::uint64_t s2 = 0;

    bool operator==(const SeedPair& o) const { return s1 == o.s1 && s2 == o.s2; }
};

// splitmix64 finalizer; bijective on 64-bit values.
std::uint64_t mix64(std::uint64_t z);

// 64-bit hash of the packed code bits (and k) under one seed.
std::uint64_t hash_kmer(const Kmer& x, std::uint64_t seed);

// Plain Bloom filter sized as r bits per stored element. Probes are double
// hashing: probe_i(x) = (h1(x) + i*h2(x)) mod m, h2 forced odd. No false
// negatives; bits are only ever set, never cleared.
class BloomFilter {
public:
    // m = max(1, ceil(r*n)), h = max(1, round(r*ln 2)). Throws ParamError
    // for r <= 0.
    static BloomFilter create(std::uint64_t n, double r, SeedPair seeds);

    // Rebuilds a filter from serialized parts. bits must hold exactly
    // ceil(m/8) bytes; throws ParamError otherwise or when m or h is zero.
    static BloomFilter from_raw(std::uint64_t m, unsigned h, SeedPair seeds,
                                std::vector<std::uint8_t> bits);

    void insert(const Kmer& x);
    bool contains(const Kmer& x) const;

    // popcount(bits) / m
    double fill_ratio() const;

    std::uint64_t m() const { return m_; }
    unsigned h() const { return h_; }
    SeedPair seeds() const { return seeds_; }
    std::uint64_t inserted() const { return n_inserted_; }

    // Bitmap bytes, bit j of the array at byte j/8, low bit first.
    const std::vector<std::uint8_t>& raw_bits() const { return bits_; }

private:
    BloomFilter(std::uint64_t m, unsigned h, SeedPair seeds,
                std::vector<std::uint8_t> bits)
        : m_(m), h_(h), seeds_(seeds), bits_(std::move(bits)) {}

    std::uint64_t m_;
    unsigned h_;
    SeedPair seeds_;
    std::vector<std::uint8_t> bits_;
    std::uint64_t n_inserted_ = 0;
};

}  // namespace cbf

#endif
