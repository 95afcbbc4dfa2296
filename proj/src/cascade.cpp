#include "cbf/cascade.hpp"

#include <algorithm>
#include <string>

#include "cbf/errors.hpp"

namespace cbf {

namespace {

constexpr unsigned kMaxLevels = 16;

// Sorted distinct neighbors of the member set, members themselves removed.
std::vector<Kmer> nonmember_neighbors(const KmerSet& t0) {
    std::vector<Kmer> pool;
    pool.reserve(8 * t0.size());
    for (const Kmer& x : t0.members())
        for (const Kmer& y : neighbors(x, t0.is_canonical()))
            pool.push_back(y);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    std::vector<Kmer> out;
    out.reserve(pool.size());
    std::set_difference(pool.begin(), pool.end(), t0.members().begin(),
                        t0.members().end(), std::back_inserter(out));
    return out;
}

std::vector<Kmer> accepted_by(const std::vector<Kmer>& candidates,
                              const BloomFilter& f) {
    std::vector<Kmer> out;
    for (const Kmer& y : candidates)
        if (f.contains(y)) out.push_back(y);
    return out;
}

}  // namespace

SeedPair cascade_level_seeds(std::uint64_t master_seed, unsigned level) {
    constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
    return {mix64(master_seed + golden * (2 * level - 1)),
            mix64(master_seed + golden * (2 * level))};
}

CascadeIndex CascadeIndex::build(const KmerSet& t0, double r, unsigned t,
                                 std::uint64_t master_seed) {
    if (t0.empty()) throw ParamError("member set is empty");
    if (!(r > 0.0))
        throw ParamError("bits per element must be positive, got " +
                         std::to_string(r));
    if (t < 1 || t > kMaxLevels)
        throw ParamError("level count must be in [1, 16], got " +
                         std::to_string(t));

    std::vector<BloomFilter> levels;
    std::vector<std::uint64_t> counts{t0.size()};

    BloomFilter b1 = BloomFilter::create(t0.size(), r,
                                         cascade_level_seeds(master_seed, 1));
    for (const Kmer& x : t0.members()) b1.insert(x);
    levels.push_back(std::move(b1));

    std::vector<Kmer> t_prev2 = t0.members();
    std::vector<Kmer> t_prev1 = accepted_by(nonmember_neighbors(t0), levels[0]);
    counts.push_back(t_prev1.size());

    for (unsigned i = 2; i <= t && !t_prev1.empty(); ++i) {
        BloomFilter bi = BloomFilter::create(
            t_prev1.size(), r, cascade_level_seeds(master_seed, i));
        for (const Kmer& y : t_prev1) bi.insert(y);
        std::vector<Kmer> t_i = accepted_by(t_prev2, bi);
        levels.push_back(std::move(bi));
        counts.push_back(t_i.size());
        t_prev2 = std::move(t_prev1);
        t_prev1 = std::move(t_i);
    }

    return CascadeIndex(t0.k(), t0.is_canonical(), std::move(levels),
                        std::move(counts), std::move(t_prev1));
}

CascadeIndex CascadeIndex::from_parts(unsigned k, bool canonical,
                                      std::vector<BloomFilter> levels,
                                      std::vector<std::uint64_t> level_counts,
                                      std::vector<Kmer> tail) {
    if (k < 1 || k > Kmer::max_k)
        throw ParamError("k must be in [1, 128], got " + std::to_string(k));
    if (levels.empty() || levels.size() > kMaxLevels)
        throw ParamError("stored level count must be in [1, 16], got " +
                         std::to_string(levels.size()));
    if (level_counts.size() != levels.size() + 1)
        throw ParamError("level count list must have " +
                         std::to_string(levels.size() + 1) + " entries, got " +
                         std::to_string(level_counts.size()));
    if (level_counts[0] < 1) throw ParamError("member count must be positive");
    if (level_counts.back() != tail.size())
        throw ParamError("tail size " + std::to_string(tail.size()) +
                         " does not match last level count " +
                         std::to_string(level_counts.back()));
    for (const Kmer& x : tail)
        if (x.k() != k)
            throw ParamError("tail k-mer length " + std::to_string(x.k()) +
                             " does not match index k=" + std::to_string(k));
    if (!std::is_sorted(tail.begin(), tail.end()))
        throw ParamError("tail set is not sorted");
    return CascadeIndex(k, canonical, std::move(levels),
                        std::move(level_counts), std::move(tail));
}

bool CascadeIndex::query(const Kmer& x) const {
    if (x.k() != k_)
        throw ParamError("query k-mer length " + std::to_string(x.k()) +
                         " does not match index k=" + std::to_string(k_));
    Kmer probe = canonical_ ? canonical(x) : x;
    // First rejecting level j proves the probe left the chain at T_{j-1}:
    // even j means it was in T_{j-2}'s line of descent from T_0.
    for (std::size_t j = 1; j <= levels_.size(); ++j)
        if (!levels_[j - 1].contains(probe)) return j % 2 == 0;
    bool in_tail = std::binary_search(tail_.begin(), tail_.end(), probe);
    return levels_.size() % 2 == 0 ? in_tail : !in_tail;
}

BuildStats CascadeIndex::stats() const {
    BuildStats s;
    s.n = counts_[0];
    s.counts = counts_;
    s.bitmap_bits.reserve(levels_.size());
    std::uint64_t total = 0;
    for (const BloomFilter& f : levels_) {
        s.bitmap_bits.push_back(f.m());
        total += f.m();
    }
    s.tail_bits = 2 * static_cast<std::uint64_t>(k_) * tail_.size();
    total += s.tail_bits;
    s.total_bits = total;
    s.bits_per_kmer = static_cast<double>(total) / static_cast<double>(s.n);
    return s;
}

}  // namespace cbf
