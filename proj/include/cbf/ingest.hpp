#ifndef CBF_INGEST_HPP
#define CBF_INGEST_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cbf/cascade.hpp"
#include "cbf/kmer.hpp"

namespace cbf {

struct FastaRecord {
    std::string header;    // text after '>', without the newline
    std::string sequence;  // joined lines, uppercased, whitespace removed
};

// Streaming FASTA reader. Tolerates CRLF, blank lines, and multi-line
// sequences. Throws FormatError (with the line number) when the first
// content line is not a header.
class FastaReader {
public:
    explicit FastaReader(std::istream& in);
    std::optional<FastaRecord> next();

private:
    std::istream& in_;
    std::string pending_header_;
    bool have_pending_ = false;
    bool started_ = false;
    std::size_t line_no_ = 0;
};

// Union of the k-mers of every record, canonicalized when flagged,
// deduplicated into an exact set. The set may end up empty.
std::vector<Kmer> scan_records(FastaReader& reader, unsigned k, bool canonical);
KmerSet collect_kmers(FastaReader& reader, unsigned k, bool canonical);
KmerSet collect_kmers(const std::vector<FastaRecord>& records, unsigned k,
                      bool canonical);

// Binary index format, little-endian: magic "CBF1", version byte, flags
// byte (bit 0 = canonical), k (2 bytes), stored level count L (1 byte),
// L+1 8-byte level counts, then per level m / h / seed pair / bitmap
// bytes, then the tail count and packed 2k-bit tail codes sorted
// ascending, and a trailing 8-byte FNV-1a checksum of everything before
// it. save_index is byte-deterministic; load_index validates every field
// and the checksum before constructing anything.
void save_index(const CascadeIndex& ix, std::ostream& out);
CascadeIndex load_index(std::istream& in);

// File wrappers. Saving writes a temporary file next to the target and
// renames it into place, so a failed save leaves no partial index.
void save_index_file(const CascadeIndex& ix, const std::string& path);
CascadeIndex load_index_file(const std::string& path);

}  // namespace cbf

#endif
