#ifndef CBF_ORACLE_HPP
#define CBF_ORACLE_HPP

#include <vector>

#include "cbf/cascade.hpp"
#include "cbf/kmer.hpp"

namespace cbf::oracle {

// Ground-truth membership: exact lookup in the sorted member set.
bool membership(const KmerSet& t0, const Kmer& x);

// The critical false positive sets recomputed by brute force.
struct ExactLevels {
    // sets[0] = T_0 members, sets[i] = T_i for each stored level.
    std::vector<std::vector<Kmer>> sets;
};

// Recomputes every T_i from scratch against the index's actual filters:
// T_1 = non-member neighbors of T_0 accepted by B_1, then
// T_i = { y in T_{i-2} : B_i accepts y }. Deliberately slow and literal.
ExactLevels levels(const KmerSet& t0, const CascadeIndex& ix);

}  // namespace cbf::oracle

#endif
