#include "cbf/kmer.hpp"

#include <algorithm>
#include <cstdio>

#include "cbf/errors.hpp"

namespace cbf {

namespace {

using Code = Kmer::Code;

constexpr std::array<std::int8_t, 256> make_base_table() {
    std::array<std::int8_t, 256> t{};
    for (auto& v : t) v = -1;
    t['A'] = 0; t['a'] = 0;
    t['C'] = 1; t['c'] = 1;
    t['G'] = 2; t['g'] = 2;
    t['T'] = 3; t['t'] = 3;
    return t;
}

constexpr std::array<std::int8_t, 256> kBaseTable = make_base_table();

// Low 2k bits set.
Code mask_for(unsigned k) {
    Code m{};
    unsigned bits = 2 * k;
    for (unsigned w = 0; w < Kmer::word_count; ++w) {
        if (bits >= 64) {
            m[w] = ~0ULL;
            bits -= 64;
        } else {
            m[w] = bits ? ((1ULL << bits) - 1) : 0;
            bits = 0;
        }
    }
    return m;
}

void shl2(Code& c) {
    for (unsigned w = Kmer::word_count; w-- > 1;)
        c[w] = (c[w] << 2) | (c[w - 1] >> 62);
    c[0] <<= 2;
}

void shr2(Code& c) {
    for (unsigned w = 0; w + 1 < Kmer::word_count; ++w)
        c[w] = (c[w] >> 2) | (c[w + 1] << 62);
    c[Kmer::word_count - 1] >>= 2;
}

// Arbitrary right shift of the 256-bit value, s in [0, 255].
Code shr_bits(const Code& c, unsigned s) {
    Code r{};
    unsigned ws = s / 64, bs = s % 64;
    for (unsigned w = 0; w + ws < Kmer::word_count; ++w) {
        r[w] = c[w + ws] >> bs;
        if (bs && w + ws + 1 < Kmer::word_count)
            r[w] |= c[w + ws + 1] << (64 - bs);
    }
    return r;
}

void and_mask(Code& c, const Code& m) {
    for (unsigned w = 0; w < Kmer::word_count; ++w) c[w] &= m[w];
}

// Reverses the 32 two-bit groups of one word.
std::uint64_t rev2_64(std::uint64_t v) {
    v = ((v & 0x3333333333333333ULL) << 2) | ((v >> 2) & 0x3333333333333333ULL);
    v = ((v & 0x0F0F0F0F0F0F0F0FULL) << 4) | ((v >> 4) & 0x0F0F0F0F0F0F0F0FULL);
    return __builtin_bswap64(v);
}

}  // namespace

unsigned Kmer::base_at(unsigned pos) const {
    unsigned off = 2 * (k_ - 1 - pos);
    return static_cast<unsigned>(code_[off / 64] >> (off % 64)) & 3u;
}

bool Kmer::operator<(const Kmer& o) const {
    if (k_ != o.k_) return k_ < o.k_;
    for (unsigned w = word_count; w-- > 0;)
        if (code_[w] != o.code_[w]) return code_[w] < o.code_[w];
    return false;
}

Kmer Kmer::from_code(unsigned k, const Code& code) {
    if (k < 1 || k > max_k)
        throw ParamError("k must be in [1, 128], got " + std::to_string(k));
    Code m = mask_for(k);
    for (unsigned w = 0; w < word_count; ++w)
        if (code[w] & ~m[w])
            throw ParamError("k-mer code has bits set above position " +
                             std::to_string(2 * k));
    return Kmer(k, code);
}

Kmer encode(std::string_view s) {
    if (s.size() < 1 || s.size() > Kmer::max_k)
        throw ParamError("k-mer length must be in [1, 128], got " +
                         std::to_string(s.size()));
    Code code{};
    for (std::size_t i = 0; i < s.size(); ++i) {
        std::int8_t b = kBaseTable[static_cast<unsigned char>(s[i])];
        if (b < 0)
            throw ParamError("invalid base '" + std::string(1, s[i]) +
                             "' at position " + std::to_string(i));
        shl2(code);
        code[0] |= static_cast<std::uint64_t>(b);
    }
    return Kmer(static_cast<unsigned>(s.size()), code);
}

std::string decode(const Kmer& x) {
    static const char kBases[4] = {'A', 'C', 'G', 'T'};
    std::string s(x.k(), '\0');
    for (unsigned i = 0; i < x.k(); ++i) s[i] = kBases[x.base_at(i)];
    return s;
}

Kmer reverse_complement(const Kmer& x) {
    // Complement is a bitwise NOT per 2-bit group; then reverse all 128
    // groups of the register and shift the window back down. High garbage
    // from the NOT ends up below the shift and drops out.
    Code c = x.code();
    for (auto& w : c) w = ~w;
    Code rev;
    for (unsigned w = 0; w < Kmer::word_count; ++w)
        rev[Kmer::word_count - 1 - w] = rev2_64(c[w]);
    rev = shr_bits(rev, 256 - 2 * x.k());
    return Kmer(x.k(), rev);
}

Kmer canonical(const Kmer& x) {
    Kmer rc = reverse_complement(x);
    return rc < x ? rc : x;
}

void NeighborSet::add(const Kmer& x) {
    for (unsigned i = 0; i < count; ++i)
        if (items[i] == x) return;
    items[count++] = x;
}

NeighborSet neighbors(const Kmer& x, bool canonicalize) {
    NeighborSet out;
    Code m = mask_for(x.k());
    unsigned top = 2 * (x.k() - 1);
    for (unsigned b = 0; b < 4; ++b) {
        // suffix overlap: drop first base, append b
        Code c = x.code();
        shl2(c);
        c[0] |= b;
        and_mask(c, m);
        Kmer y(x.k(), c);
        out.add(canonicalize ? canonical(y) : y);
    }
    for (unsigned b = 0; b < 4; ++b) {
        // prefix overlap: prepend b, drop last base
        Code c = x.code();
        shr2(c);
        c[top / 64] |= static_cast<std::uint64_t>(b) << (top % 64);
        Kmer y(x.k(), c);
        out.add(canonicalize ? canonical(y) : y);
    }
    return out;
}

KmerScanner::KmerScanner(std::string_view seq, unsigned k) : seq_(seq), k_(k) {
    if (k < 1 || k > Kmer::max_k)
        throw ParamError("k must be in [1, 128], got " + std::to_string(k));
}

std::optional<Kmer> KmerScanner::next() {
    Code m = mask_for(k_);
    while (pos_ < seq_.size()) {
        std::int8_t b = kBaseTable[static_cast<unsigned char>(seq_[pos_++])];
        if (b < 0) {
            run_ = 0;
            code_ = {};
            continue;
        }
        shl2(code_);
        code_[0] |= static_cast<std::uint64_t>(b);
        and_mask(code_, m);
        if (++run_ >= k_) return Kmer(k_, code_);
    }
    return std::nullopt;
}

std::vector<Kmer> kmers_of_sequence(std::string_view seq, unsigned k) {
    std::vector<Kmer> out;
    KmerScanner sc(seq, k);
    while (auto x = sc.next()) out.push_back(*x);
    return out;
}

KmerSet::KmerSet(unsigned k, bool canonical, std::vector<Kmer> members)
    : k_(k), canonical_(canonical), members_(std::move(members)) {}

KmerSet KmerSet::from_kmers(unsigned k, bool canonical, std::vector<Kmer> members) {
    if (k < 1 || k > Kmer::max_k)
        throw ParamError("k must be in [1, 128], got " + std::to_string(k));
    for (const Kmer& x : members) {
        if (x.k() != k)
            throw ParamError("k-mer length " + std::to_string(x.k()) +
                             " does not match set k=" + std::to_string(k));
        if (canonical && x != cbf::canonical(x))
            throw ParamError("non-canonical k-mer " + decode(x) +
                             " in canonical set");
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return KmerSet(k, canonical, std::move(members));
}

bool KmerSet::contains(const Kmer& x) const {
    return std::binary_search(members_.begin(), members_.end(), x);
}

}  // namespace cbf
