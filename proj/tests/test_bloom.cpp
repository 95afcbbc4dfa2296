#include "cbf/bloom.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "cbf/errors.hpp"
#include "doctest.h"
#include "testutil.hpp"

using cbf::BloomFilter;
using cbf::Kmer;
using cbf::SeedPair;

namespace {

const SeedPair kSeeds{0x1234, 0x5678};

std::uint64_t popcount_bits(const BloomFilter& f) {
    std::uint64_t ones = 0;
    for (std::uint8_t b : f.raw_bits()) ones += __builtin_popcount(b);
    return ones;
}

}  // namespace

TEST_CASE("create sizes m and h from r") {
    BloomFilter a = BloomFilter::create(1000, 6.299, kSeeds);
    CHECK(a.m() == 6299);
    CHECK(a.h() == 4);  // round(6.299 * ln 2) = round(4.366)

    BloomFilter b = BloomFilter::create(0, 6.0, kSeeds);
    CHECK(b.m() == 1);
    CHECK(b.h() == 4);

    BloomFilter c = BloomFilter::create(1000000, 10.0, kSeeds);
    CHECK(c.m() == 10000000);
    CHECK(c.h() == 7);  // round(6.93)

    CHECK(BloomFilter::create(10, 0.1, kSeeds).h() == 1);  // floor at 1

    CHECK_THROWS_AS(BloomFilter::create(10, 0.0, kSeeds), cbf::ParamError);
    CHECK_THROWS_AS(BloomFilter::create(10, -1.0, kSeeds), cbf::ParamError);
}

TEST_CASE("no false negatives") {
    std::mt19937_64 rng(21);
    auto members = testutil::random_kmers(rng, 31, 10000);
    BloomFilter f = BloomFilter::create(members.size(), 8.0, kSeeds);
    for (const Kmer& x : members) f.insert(x);
    for (const Kmer& x : members) CHECK(f.contains(x));
    CHECK(f.inserted() == members.size());
    CHECK(popcount_bits(f) <= f.h() * f.inserted());
}

TEST_CASE("empty filter accepts nothing") {
    BloomFilter f = BloomFilter::create(1000, 8.0, kSeeds);
    std::mt19937_64 rng(22);
    for (int i = 0; i < 100; ++i)
        CHECK(!f.contains(testutil::random_kmer(rng, 21)));
    CHECK(f.fill_ratio() == 0.0);
}

TEST_CASE("insert is idempotent on the bitmap") {
    std::mt19937_64 rng(23);
    BloomFilter f = BloomFilter::create(100, 8.0, kSeeds);
    Kmer x = testutil::random_kmer(rng, 21);
    f.insert(x);
    auto once = f.raw_bits();
    f.insert(x);
    CHECK(f.raw_bits() == once);
}

TEST_CASE("fill ratio tracks occupancy") {
    std::mt19937_64 rng(24);
    BloomFilter f = BloomFilter::create(100000, 8.0, kSeeds);
    double prev = 0.0;
    for (int i = 0; i < 100000; ++i) {
        f.insert(testutil::random_kmer(rng, 32));
        if (i % 20000 == 0) {
            double now = f.fill_ratio();
            CHECK(now >= prev);  // monotone, bits only get set
            prev = now;
        }
    }
    double expect = 1.0 - std::exp(-static_cast<double>(f.h()) * 100000.0 /
                                   static_cast<double>(f.m()));
    CHECK(std::abs(f.fill_ratio() - expect) < 0.02);
}

TEST_CASE("false positive rate tracks the c^r model") {
    std::mt19937_64 rng(25);
    const std::size_t n = 100000;
    auto members = testutil::random_kmers(rng, 32, n);
    cbf::KmerSet set = cbf::KmerSet::from_kmers(32, false, members);
    auto probes = testutil::random_nonmembers(rng, set, n);

    for (double r : {6.0, 8.0, 10.0}) {
        BloomFilter f = BloomFilter::create(set.size(), r, kSeeds);
        for (const Kmer& x : set.members()) f.insert(x);
        std::size_t hits = 0;
        for (const Kmer& x : probes)
            if (f.contains(x)) ++hits;
        double measured = static_cast<double>(hits) / probes.size();
        double expect = std::pow(0.6185, r);
        CHECK(measured > 0.9 * expect);
        CHECK(measured < 1.1 * expect);
    }
}

TEST_CASE("deterministic given seeds and insert order") {
    std::mt19937_64 rng(26);
    auto members = testutil::random_kmers(rng, 21, 2000);
    BloomFilter a = BloomFilter::create(members.size(), 8.0, kSeeds);
    BloomFilter b = BloomFilter::create(members.size(), 8.0, kSeeds);
    BloomFilter c = BloomFilter::create(members.size(), 8.0, {9, 9});
    for (const Kmer& x : members) {
        a.insert(x);
        b.insert(x);
        c.insert(x);
    }
    CHECK(a.raw_bits() == b.raw_bits());
    CHECK(a.raw_bits() != c.raw_bits());
}

TEST_CASE("from_raw validates shape") {
    BloomFilter f = BloomFilter::create(100, 8.0, kSeeds);
    BloomFilter g =
        BloomFilter::from_raw(f.m(), f.h(), f.seeds(), f.raw_bits());
    CHECK(g.m() == f.m());
    CHECK_THROWS_AS(
        BloomFilter::from_raw(f.m() + 8, f.h(), f.seeds(), f.raw_bits()),
        cbf::ParamError);
    CHECK_THROWS_AS(BloomFilter::from_raw(0, 1, kSeeds, {}), cbf::ParamError);
    CHECK_THROWS_AS(BloomFilter::from_raw(8, 0, kSeeds, {0}), cbf::ParamError);
}

TEST_CASE("round-trip through raw bits preserves answers") {
    std::mt19937_64 rng(27);
    auto members = testutil::random_kmers(rng, 21, 5000);
    BloomFilter f = BloomFilter::create(members.size(), 6.0, kSeeds);
    for (const Kmer& x : members) f.insert(x);
    BloomFilter g = BloomFilter::from_raw(f.m(), f.h(), f.seeds(), f.raw_bits());
    for (int i = 0; i < 5000; ++i) {
        Kmer x = testutil::random_kmer(rng, 21);
        CHECK(f.contains(x) == g.contains(x));
    }
    for (const Kmer& x : members) CHECK(g.contains(x));
}
