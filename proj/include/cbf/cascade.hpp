#ifndef CBF_CASCADE_HPP
#define CBF_CASCADE_HPP

#include <cstdint>
#include <vector>

#include "cbf/bloom.hpp"
#include "cbf/kmer.hpp"

namespace cbf {

// Realized sizes of a built index. total_bits counts bitmap bits plus 2k
// bits per tail entry; metadata bytes are not charged.
struct BuildStats {
    std::uint64_t n = 0;
    std::vector<std::uint64_t> counts;       // |T_0| .. |T_L|
    std::vector<std::uint64_t> bitmap_bits;  // m of B_1 .. B_L
    std::uint64_t tail_bits = 0;
    std::uint64_t total_bits = 0;
    double bits_per_kmer = 0.0;
};

// Seeds of level i (1-based), derived from the master seed so the levels'
// hash families differ.
SeedPair cascade_level_seeds(std::uint64_t master_seed, unsigned level);

// Chain of Bloom filters B_1..B_L over the member set T_0 and its critical
// false positive sets, with the last T set stored exactly as a sorted tail
// array. Queries walk the chain; the parity of the first rejecting level
// decides membership, exact for any probe in T_0 or adjacent to it.
class CascadeIndex {
public:
    // Builds from the exact member set: B_1 over T_0; T_1 = non-member
    // neighbors accepted by B_1; then B_i over T_{i-1} and
    // T_i = { y in T_{i-2} : B_i accepts y } until t levels are built or
    // some T_i is empty. Throws ParamError on an empty set, r <= 0, or t
    // outside [1, 16].
    static CascadeIndex build(const KmerSet& t0, double r, unsigned t,
                              std::uint64_t master_seed);

    // Reassembles a deserialized index. level_counts must have one entry
    // per stored level plus one, with the last equal to tail.size(); tail
    // must be sorted ascending. Throws ParamError otherwise.
    static CascadeIndex from_parts(unsigned k, bool canonical,
                                   std::vector<BloomFilter> levels,
                                   std::vector<std::uint64_t> level_counts,
                                   std::vector<Kmer> tail);

    // Membership of x in T_0, exact whenever x is a member or a neighbor of
    // one; never a false negative. Canonical indexes canonicalize the probe
    // first. Throws ParamError on a length mismatch.
    bool query(const Kmer& x) const;

    BuildStats stats() const;

    unsigned k() const { return k_; }
    bool is_canonical() const { return canonical_; }
    const std::vector<BloomFilter>& levels() const { return levels_; }
    const std::vector<std::uint64_t>& level_counts() const { return counts_; }
    const std::vector<Kmer>& tail() const { return tail_; }

private:
    CascadeIndex(unsigned k, bool canonical, std::vector<BloomFilter> levels,
                 std::vector<std::uint64_t> counts, std::vector<Kmer> tail)
        : k_(k),
          canonical_(canonical),
          levels_(std::move(levels)),
          counts_(std::move(counts)),
          tail_(std::move(tail)) {}

    unsigned k_;
    bool canonical_;
    std::vector<BloomFilter> levels_;
    std::vector<std::uint64_t> counts_;
    std::vector<Kmer> tail_;
};

}  // namespace cbf

#endif
