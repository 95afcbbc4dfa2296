#ifndef CBF_KMER_HPP
#define CBF_KMER_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cbf {

struct NeighborSet;

// DNA k-mer packed 2 bits per base (A=0, C=1, G=2, T=3), first base in the
// most significant 2-bit slot, so integer order equals lexicographic order.
// k up to 128 fits a 256-bit code held as four little-endian 64-bit words.
class Kmer {
public:
    static constexpr unsigned max_k = 128;
    static constexpr unsigned word_count = 4;
    using Code = std::array<std::uint64_t, word_count>;

    Kmer() = default;  // k() == 0; placeholder, not a valid k-mer

    unsigned k() const { return k_; }
    const Code& code() const { return code_; }

    // Words holding the 2k code bits; higher words are zero.
    unsigned words_in_use() const { return (k_ + 31) / 32; }

    // 2-bit value of the base at string position pos (0 = first character).
    unsigned base_at(unsigned pos) const;

    bool operator==(const Kmer& o) const { return k_ == o.k_ && code_ == o.code_; }
    bool operator!=(const Kmer& o) const { return !(*this == o); }
    // Orders by k, then by code value (MSB first). Same-k order is the
    // ascending-code order used for tail tables.
    bool operator<(const Kmer& o) const;

    // Builds a k-mer from an already-packed code. Bits at or above 2k must
    // be zero; throws ParamError otherwise.
    static Kmer from_code(unsigned k, const Code& code);

private:
    Kmer(unsigned k, const Code& code) : k_(static_cast<std::uint16_t>(k)), code_(code) {}

    std::uint16_t k_ = 0;
    Code code_{};

    friend Kmer encode(std::string_view s);
    friend Kmer reverse_complement(const Kmer& x);
    friend class KmerScanner;
    friend NeighborSet neighbors(const Kmer& x, bool canonicalize);
};

// Packs a DNA string (case-insensitive ACGT). Throws ParamError on invalid
// characters (message names the offending position) or on length outside
// [1, 128].
Kmer encode(std::string_view s);

// Inverse of encode.
std::string decode(const Kmer& x);

// Base-wise complement (A<->T, C<->G) read in reverse order. Involution.
Kmer reverse_complement(const Kmer& x);

// min(x, reverse_complement(x)) by code value. Idempotent.
Kmer canonical(const Kmer& x);

// The distinct de Bruijn graph neighbors of one k-mer: up to 4 right
// extensions (drop first base, append b) and 4 left extensions (prepend b,
// drop last base). At most 8; may include the k-mer itself (homopolymer
// self-loop).
struct NeighborSet {
    std::array<Kmer, 8> items;
    unsigned count = 0;

    const Kmer* begin() const { return items.data(); }
    const Kmer* end() const { return items.data() + count; }
    unsigned size() const { return count; }

private:
    void add(const Kmer& x);
    friend NeighborSet neighbors(const Kmer& x, bool canonicalize);
};

// Neighbor enumeration; with canonicalize set, every neighbor is replaced by
// its canonical form before deduplication.
NeighborSet neighbors(const Kmer& x, bool canonicalize = false);

// Streams the k-mers of a sequence left to right, one per length-k window
// made purely of ACGT characters. Windows overlapping any other character
// are skipped; duplicates are yielded as they occur.
class KmerScanner {
public:
    KmerScanner(std::string_view seq, unsigned k);
    std::optional<Kmer> next();

private:
    std::string_view seq_;
    unsigned k_;
    std::size_t pos_ = 0;
    unsigned run_ = 0;
    Kmer::Code code_{};
};

// Collects the full window stream into a vector (duplicates included).
std::vector<Kmer> kmers_of_sequence(std::string_view seq, unsigned k);

// Exact deduplicated set of same-length k-mers, kept sorted ascending by
// code. With the canonical flag set every member must equal its canonical
// form.
class KmerSet {
public:
    // Sorts, deduplicates and validates the members. Throws ParamError on a
    // length mismatch or, in canonical mode, on a non-canonical member.
    static KmerSet from_kmers(unsigned k, bool canonical, std::vector<Kmer> members);

    unsigned k() const { return k_; }
    bool is_canonical() const { return canonical_; }
    std::uint64_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<Kmer>& members() const { return members_; }

    bool contains(const Kmer& x) const;

private:
    KmerSet(unsigned k, bool canonical, std::vector<Kmer> members);

    unsigned k_;
    bool canonical_;
    std::vector<Kmer> members_;
};

}  // namespace cbf

#endif
