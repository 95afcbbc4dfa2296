#include "cbf/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>

#include "cbf/errors.hpp"

namespace cbf {

namespace {

constexpr std::uint64_t kFnvBasis = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;
constexpr char kMagic[4] = {'C', 'B', 'F', '1'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kFlagCanonical = 1;
// Refuses absurd section lengths so a corrupt header fails cleanly instead
// of exhausting memory.
constexpr std::uint64_t kMaxSaneCount = 1ULL << 38;

bool getline_any(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

class ByteSink {
public:
    explicit ByteSink(std::ostream& out) : out_(out) {}

    void bytes(const void* p, std::size_t n) {
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            fnv_ ^= b[i];
            fnv_ *= kFnvPrime;
        }
        out_.write(static_cast<const char*>(p),
                   static_cast<std::streamsize>(n));
    }

    void u8(std::uint8_t v) { bytes(&v, 1); }

    void u16(std::uint16_t v) {
        std::uint8_t b[2] = {static_cast<std::uint8_t>(v),
                             static_cast<std::uint8_t>(v >> 8)};
        bytes(b, 2);
    }

    void u64(std::uint64_t v) {
        std::uint8_t b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
        bytes(b, 8);
    }

    // Writes the checksum itself, outside its own hash.
    void finish() {
        std::uint64_t sum = fnv_;
        std::uint8_t b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(sum >> (8 * i));
        out_.write(reinterpret_cast<const char*>(b), 8);
    }

private:
    std::ostream& out_;
    std::uint64_t fnv_ = kFnvBasis;
};

class ByteSource {
public:
    explicit ByteSource(std::istream& in) : in_(in) {}

    void bytes(void* p, std::size_t n) {
        in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n)
            throw FormatError("unexpected end of index file");
        const auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            fnv_ ^= b[i];
            fnv_ *= kFnvPrime;
        }
    }

    std::uint8_t u8() {
        std::uint8_t v;
        bytes(&v, 1);
        return v;
    }

    std::uint16_t u16() {
        std::uint8_t b[2];
        bytes(b, 2);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }

    std::uint64_t u64() {
        std::uint8_t b[8];
        bytes(b, 8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        return v;
    }

    // Reads the trailing checksum without folding it into the hash and
    // compares against everything seen so far.
    void verify_checksum() {
        std::uint64_t expect = fnv_;
        std::uint8_t b[8];
        in_.read(reinterpret_cast<char*>(b), 8);
        if (in_.gcount() != 8) throw FormatError("unexpected end of index file");
        std::uint64_t stored = 0;
        for (int i = 0; i < 8; ++i) stored |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        if (stored != expect) throw FormatError("index checksum mismatch");
        if (in_.peek() != std::istream::traits_type::eof())
            throw FormatError("trailing bytes after index checksum");
    }

private:
    std::istream& in_;
    std::uint64_t fnv_ = kFnvBasis;
};

std::size_t tail_code_bytes(unsigned k) { return (2 * k + 7) / 8; }

}  // namespace

FastaReader::FastaReader(std::istream& in) : in_(in) {}

std::optional<FastaRecord> FastaReader::next() {
    std::string line;
    if (!started_) {
        started_ = true;
        while (getline_any(in_, line)) {
            ++line_no_;
            if (line.empty()) continue;
            if (line[0] != '>')
                throw FormatError("line " + std::to_string(line_no_) +
                                  ": expected '>' header");
            pending_header_ = line.substr(1);
            have_pending_ = true;
            break;
        }
    }
    if (!have_pending_) return std::nullopt;

    FastaRecord rec;
    rec.header = pending_header_;
    have_pending_ = false;
    while (getline_any(in_, line)) {
        ++line_no_;
        if (line.empty()) continue;
        if (line[0] == '>') {
            pending_header_ = line.substr(1);
            have_pending_ = true;
            break;
        }
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                rec.sequence.push_back(static_cast<char>(
                    std::toupper(static_cast<unsigned char>(ch))));
    }
    return rec;
}

std::vector<Kmer> scan_records(FastaReader& reader, unsigned k, bool canonical) {
    std::vector<Kmer> all;
    while (auto rec = reader.next()) {
        KmerScanner sc(rec->sequence, k);
        while (auto x = sc.next())
            all.push_back(canonical ? cbf::canonical(*x) : *x);
    }
    return all;
}

KmerSet collect_kmers(FastaReader& reader, unsigned k, bool canonical) {
    return KmerSet::from_kmers(k, canonical, scan_records(reader, k, canonical));
}

KmerSet collect_kmers(const std::vector<FastaRecord>& records, unsigned k,
                      bool canonical) {
    std::vector<Kmer> all;
    for (const FastaRecord& rec : records) {
        KmerScanner sc(rec.sequence, k);
        while (auto x = sc.next())
            all.push_back(canonical ? cbf::canonical(*x) : *x);
    }
    return KmerSet::from_kmers(k, canonical, std::move(all));
}

void save_index(const CascadeIndex& ix, std::ostream& out) {
    ByteSink sink(out);
    sink.bytes(kMagic, 4);
    sink.u8(kVersion);
    sink.u8(ix.is_canonical() ? kFlagCanonical : 0);
    sink.u16(static_cast<std::uint16_t>(ix.k()));
    sink.u8(static_cast<std::uint8_t>(ix.levels().size()));
    for (std::uint64_t c : ix.level_counts()) sink.u64(c);
    for (const BloomFilter& f : ix.levels()) {
        if (f.h() > 255)
            throw ParamError("hash count " + std::to_string(f.h()) +
                             " exceeds the format limit of 255");
        sink.u64(f.m());
        sink.u8(static_cast<std::uint8_t>(f.h()));
        sink.u64(f.seeds().s1);
        sink.u64(f.seeds().s2);
        sink.bytes(f.raw_bits().data(), f.raw_bits().size());
    }
    sink.u64(ix.tail().size());
    std::size_t nbytes = tail_code_bytes(ix.k());
    for (const Kmer& x : ix.tail()) {
        std::uint8_t buf[32];
        for (std::size_t j = 0; j < nbytes; ++j)
            buf[j] = static_cast<std::uint8_t>(x.code()[j / 8] >> (8 * (j % 8)));
        sink.bytes(buf, nbytes);
    }
    sink.finish();
    if (!out) throw IoError("index write failed");
}

CascadeIndex load_index(std::istream& in) {
    ByteSource src(in);
    char magic[4];
    src.bytes(magic, 4);
    if (!std::equal(magic, magic + 4, kMagic))
        throw FormatError("bad index magic");
    std::uint8_t version = src.u8();
    if (version != kVersion)
        throw FormatError("unsupported index version " + std::to_string(version));
    std::uint8_t flags = src.u8();
    if (flags & ~kFlagCanonical)
        throw FormatError("unknown index flag bits");
    unsigned k = src.u16();
    if (k < 1 || k > Kmer::max_k)
        throw FormatError("index k " + std::to_string(k) + " out of range");
    unsigned levels = src.u8();
    if (levels < 1 || levels > 16)
        throw FormatError("stored level count " + std::to_string(levels) +
                          " out of range");
    std::vector<std::uint64_t> counts(levels + 1);
    for (auto& c : counts) c = src.u64();
    if (counts[0] < 1) throw FormatError("index member count is zero");

    std::vector<BloomFilter> filters;
    filters.reserve(levels);
    for (unsigned i = 0; i < levels; ++i) {
        std::uint64_t m = src.u64();
        if (m < 1 || m > kMaxSaneCount)
            throw FormatError("filter bitmap length out of range");
        unsigned h = src.u8();
        if (h < 1) throw FormatError("filter hash count is zero");
        SeedPair seeds{src.u64(), src.u64()};
        std::vector<std::uint8_t> bits((m + 7) / 8);
        src.bytes(bits.data(), bits.size());
        if (m % 8 && (bits.back() >> (m % 8)))
            throw FormatError("filter bitmap padding not zero");
        filters.push_back(BloomFilter::from_raw(m, h, seeds, std::move(bits)));
    }

    std::uint64_t tail_count = src.u64();
    if (tail_count != counts[levels])
        throw FormatError("tail count does not match last level count");
    if (tail_count > kMaxSaneCount)
        throw FormatError("tail count out of range");
    std::size_t nbytes = tail_code_bytes(k);
    std::vector<Kmer> tail;
    tail.reserve(tail_count);
    for (std::uint64_t i = 0; i < tail_count; ++i) {
        std::uint8_t buf[32] = {};
        src.bytes(buf, nbytes);
        Kmer::Code code{};
        for (std::size_t j = 0; j < nbytes; ++j)
            code[j / 8] |= static_cast<std::uint64_t>(buf[j]) << (8 * (j % 8));
        unsigned extra = 2 * k % 64;
        if (extra && (code[(2 * k) / 64] >> extra))
            throw FormatError("tail k-mer code out of range");
        Kmer x = Kmer::from_code(k, code);
        if (!tail.empty() && !(tail.back() < x))
            throw FormatError("tail set not sorted ascending");
        tail.push_back(x);
    }

    src.verify_checksum();
    return CascadeIndex::from_parts(k, flags & kFlagCanonical,
                                    std::move(filters), std::move(counts),
                                    std::move(tail));
}

void save_index_file(const CascadeIndex& ix, const std::string& path) {
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        try {
            save_index(ix, out);
        } catch (...) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw;
        }
        out.close();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("index write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot move index into place at " + path);
    }
}

CascadeIndex load_index_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return load_index(in);
}

}  // namespace cbf
