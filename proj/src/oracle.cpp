#include "cbf/oracle.hpp"

#include <algorithm>

namespace cbf::oracle {

bool membership(const KmerSet& t0, const Kmer& x) {
    return t0.contains(x);
}

ExactLevels levels(const KmerSet& t0, const CascadeIndex& ix) {
    ExactLevels out;
    out.sets.push_back(t0.members());

    std::vector<Kmer> pool;
    for (const Kmer& x : t0.members())
        for (const Kmer& y : neighbors(x, ix.is_canonical()))
            if (!t0.contains(y)) pool.push_back(y);
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    std::vector<Kmer> t1;
    for (const Kmer& y : pool)
        if (ix.levels()[0].contains(y)) t1.push_back(y);
    out.sets.push_back(std::move(t1));

    for (std::size_t i = 2; i <= ix.levels().size(); ++i) {
        std::vector<Kmer> ti;
        for (const Kmer& y : out.sets[i - 2])
            if (ix.levels()[i - 1].contains(y)) ti.push_back(y);
        out.sets.push_back(std::move(ti));
    }
    return out;
}

}  // namespace cbf::oracle
