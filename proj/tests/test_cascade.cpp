#include "cbf/cascade.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "cbf/errors.hpp"
#include "cbf/model.hpp"
#include "cbf/oracle.hpp"
#include "doctest.h"
#include "testutil.hpp"

using cbf::CascadeIndex;
using cbf::Kmer;
using cbf::KmerSet;

TEST_CASE("level seeds are distinct per level") {
    std::set<std::uint64_t> seen;
    for (unsigned level = 1; level <= 16; ++level) {
        cbf::SeedPair sp = cbf::cascade_level_seeds(42, level);
        seen.insert(sp.s1);
        seen.insert(sp.s2);
        CHECK(sp == cbf::cascade_level_seeds(42, level));
    }
    CHECK(seen.size() == 32);
}

TEST_CASE("build rejects bad parameters") {
    KmerSet empty = KmerSet::from_kmers(3, false, {});
    CHECK_THROWS_AS(CascadeIndex::build(empty, 6.0, 4, 1), cbf::ParamError);
    KmerSet one = KmerSet::from_kmers(3, false, {cbf::encode("AAA")});
    CHECK_THROWS_AS(CascadeIndex::build(one, 0.0, 4, 1), cbf::ParamError);
    CHECK_THROWS_AS(CascadeIndex::build(one, 6.0, 0, 1), cbf::ParamError);
    CHECK_THROWS_AS(CascadeIndex::build(one, 6.0, 17, 1), cbf::ParamError);
}

TEST_CASE("huge r stops the chain at one level") {
    // with 64 bits per element the first filter essentially never lies,
    // so no neighbor survives as a critical false positive
    KmerSet one = KmerSet::from_kmers(3, false, {cbf::encode("AAA")});
    CascadeIndex ix = CascadeIndex::build(one, 64.0, 4, 7);
    CHECK(ix.levels().size() == 1);
    CHECK(ix.tail().empty());
    CHECK(ix.level_counts() == std::vector<std::uint64_t>{1, 0});
    CHECK(ix.query(cbf::encode("AAA")));
}

TEST_CASE("set laws hold even when every filter lies a lot") {
    std::mt19937_64 rng(41);
    KmerSet t0 = testutil::genome_set(rng, 2000, 11);
    CascadeIndex ix = CascadeIndex::build(t0, 1.0, 2, 5);
    cbf::oracle::ExactLevels lv = cbf::oracle::levels(t0, ix);

    REQUIRE(lv.sets.size() == ix.levels().size() + 1);
    for (std::size_t i = 0; i < lv.sets.size(); ++i)
        CHECK(lv.sets[i].size() == ix.level_counts()[i]);

    // T0 and T1 are disjoint by construction
    std::vector<Kmer> inter;
    std::set_intersection(lv.sets[0].begin(), lv.sets[0].end(),
                          lv.sets[1].begin(), lv.sets[1].end(),
                          std::back_inserter(inter));
    CHECK(inter.empty());
    if (lv.sets.size() > 2) {
        CHECK(std::includes(lv.sets[0].begin(), lv.sets[0].end(),
                            lv.sets[2].begin(), lv.sets[2].end()));
        CHECK(lv.sets[2].size() <= lv.sets[0].size());
    }
    // every element of T_i is accepted by B_i
    for (std::size_t i = 1; i < lv.sets.size(); ++i)
        for (const Kmer& y : lv.sets[i])
            CHECK(ix.levels()[i - 1].contains(y));
}

TEST_CASE("critical false positives track the first filter's lie rate") {
    std::mt19937_64 rng(42);
    KmerSet t0 = testutil::genome_set(rng, 50000, 21);
    CascadeIndex ix = CascadeIndex::build(t0, 6.45, 4, 11);

    // measured acceptance rate of B1 on fresh non-members
    auto probes = testutil::random_nonmembers(rng, t0, 100000);
    std::size_t hits = 0;
    for (const Kmer& x : probes)
        if (ix.levels()[0].contains(x)) ++hits;
    double fp1 = static_cast<double>(hits) / probes.size();

    // |T1| against the 8N * fp estimate; well below 1 because true
    // neighbors are members and neighbor sets overlap
    double ratio = static_cast<double>(ix.level_counts()[1]) /
                   (8.0 * static_cast<double>(t0.size()) * fp1);
    CHECK(ratio > 0.4);
    CHECK(ratio < 1.1);
}

TEST_CASE("members always answer true") {
    std::mt19937_64 rng(43);
    struct Config {
        unsigned k;
        unsigned t;
        double r;
    };
    const Config configs[] = {{5, 4, 6.0},  {15, 1, 6.0}, {21, 4, 6.5},
                              {31, 3, 8.0}, {33, 2, 4.0}, {64, 5, 10.0}};
    for (const Config& cfg : configs) {
        KmerSet t0 = testutil::genome_set(rng, 3000, cfg.k);
        CascadeIndex ix = CascadeIndex::build(t0, cfg.r, cfg.t, rng());
        for (const Kmer& x : t0.members()) CHECK(ix.query(x));
    }
}

TEST_CASE("a probe rejected by the first filter is a non-member") {
    std::mt19937_64 rng(44);
    KmerSet t0 = testutil::genome_set(rng, 5000, 15);
    CascadeIndex ix = CascadeIndex::build(t0, 6.5, 4, 3);
    int seen = 0;
    while (seen < 100) {
        Kmer x = testutil::random_kmer(rng, 15);
        if (!ix.levels()[0].contains(x)) {
            CHECK(!ix.query(x));
            ++seen;
        }
    }
}

TEST_CASE("exact on the member set and its neighborhood") {
    std::mt19937_64 rng(45);
    KmerSet t0 = testutil::genome_set(rng, 10000, 15);
    double r = cbf::model::optimize_r(4, 15).r;
    CascadeIndex ix = CascadeIndex::build(t0, r, 4, 99);
    std::size_t mismatches = 0;
    std::size_t probes = 0;
    for (const Kmer& x : t0.members()) {
        if (ix.query(x) != cbf::oracle::membership(t0, x)) ++mismatches;
        ++probes;
        for (const Kmer& y : cbf::neighbors(x)) {
            if (ix.query(y) != cbf::oracle::membership(t0, y)) ++mismatches;
            ++probes;
        }
    }
    CHECK(mismatches == 0);
    CHECK(probes > 8 * t0.size());  // 1 member plus usually 8 neighbors each
}

TEST_CASE("one-level index equals filter plus whitelist") {
    std::mt19937_64 rng(46);
    KmerSet t0 = testutil::genome_set(rng, 5000, 13);
    CascadeIndex ix = CascadeIndex::build(t0, 4.0, 1, 17);
    REQUIRE(ix.levels().size() == 1);
    auto equals_reference = [&](const Kmer& x) {
        bool ref = ix.levels()[0].contains(x) &&
                   !std::binary_search(ix.tail().begin(), ix.tail().end(), x);
        CHECK(ix.query(x) == ref);
    };
    for (const Kmer& x : t0.members()) equals_reference(x);
    for (const Kmer& x : ix.tail()) equals_reference(x);
    for (int i = 0; i < 2000; ++i)
        equals_reference(testutil::random_kmer(rng, 13));
}

TEST_CASE("canonical mode folds strands") {
    std::mt19937_64 rng(47);
    KmerSet t0 = testutil::genome_set(rng, 4000, 17, true);
    CascadeIndex ix = CascadeIndex::build(t0, 6.5, 4, 23);
    CHECK(ix.is_canonical());
    for (const Kmer& x : t0.members()) {
        CHECK(ix.query(x));
        CHECK(ix.query(cbf::reverse_complement(x)));
    }
    for (int i = 0; i < 2000; ++i) {
        Kmer x = testutil::random_kmer(rng, 17);
        CHECK(ix.query(x) == ix.query(cbf::reverse_complement(x)));
    }
}

TEST_CASE("query rejects a length mismatch") {
    KmerSet t0 = KmerSet::from_kmers(3, false, {cbf::encode("AAA")});
    CascadeIndex ix = CascadeIndex::build(t0, 6.0, 1, 1);
    CHECK_THROWS_AS(ix.query(cbf::encode("AAAA")), cbf::ParamError);
}

TEST_CASE("stats add up") {
    std::mt19937_64 rng(48);
    KmerSet t0 = testutil::genome_set(rng, 5000, 13);

    CascadeIndex one = CascadeIndex::build(t0, 64.0, 1, 3);
    REQUIRE(one.levels().size() == 1);
    cbf::BuildStats st1 = one.stats();
    CHECK(st1.total_bits == one.levels()[0].m() + st1.tail_bits);
    CHECK(st1.tail_bits == 2 * 13 * one.tail().size());

    CascadeIndex ix = CascadeIndex::build(t0, 6.5, 4, 3);
    cbf::BuildStats st = ix.stats();
    CHECK(st.n == t0.size());
    CHECK(st.counts == ix.level_counts());
    std::uint64_t total = st.tail_bits;
    for (std::uint64_t m : st.bitmap_bits) total += m;
    CHECK(st.total_bits == total);
    CHECK(st.bits_per_kmer ==
          static_cast<double>(total) / static_cast<double>(t0.size()));
}

TEST_CASE("realized size tracks the analytic model") {
    std::mt19937_64 rng(49);
    KmerSet t0 = testutil::genome_set(rng, 50000, 21);
    double r = cbf::model::optimize_r(4, 21).r;
    CascadeIndex ix = CascadeIndex::build(t0, r, 4, 5);
    double predicted = cbf::model::bits_per_kmer_finite(r, 4, 21);
    double realized = ix.stats().bits_per_kmer;
    CHECK(realized > 0.85 * predicted);
    CHECK(realized < 1.15 * predicted);
}

TEST_CASE("identical builds are identical structures") {
    std::mt19937_64 rng(50);
    KmerSet t0 = testutil::genome_set(rng, 3000, 11);
    CascadeIndex a = CascadeIndex::build(t0, 6.5, 4, 77);
    CascadeIndex b = CascadeIndex::build(t0, 6.5, 4, 77);
    REQUIRE(a.levels().size() == b.levels().size());
    for (std::size_t i = 0; i < a.levels().size(); ++i)
        CHECK(a.levels()[i].raw_bits() == b.levels()[i].raw_bits());
    CHECK(a.level_counts() == b.level_counts());
    CHECK(std::equal(a.tail().begin(), a.tail().end(), b.tail().begin(),
                     b.tail().end()));

    CascadeIndex c = CascadeIndex::build(t0, 6.5, 4, 78);
    bool same = a.levels()[0].raw_bits() == c.levels()[0].raw_bits();
    CHECK(!same);
}
