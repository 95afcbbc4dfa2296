#ifndef CBF_MODEL_HPP
#define CBF_MODEL_HPP

#include <vector>

namespace cbf::model {

// Per-filter false-positive base: fp_rate(r) = fp_base^r. Kept as the
// four-digit literal rather than the more precise 2^(-ln 2) because the
// published sizing figures this module reproduces were computed with it.
inline constexpr double fp_base = 0.6185;

// fp_base^r. Throws ParamError for r <= 0.
double fp_rate(double r);

// Expected total bits per stored k-mer for an unbounded cascade:
// (1 + 8 fp_base^r) * r / (1 - fp_base^r).
double bits_per_kmer_infinite(double r);

// Expected total bits per stored k-mer for a cascade truncated at t levels
// with an explicit 2k-bit-per-entry tail set. Throws ParamError on r <= 0,
// t < 1, or k < 1.
double bits_per_kmer_finite(double r, unsigned t, unsigned k);

struct OptimizeResult {
    double r;
    double bits;
};

// Minimizers of the two cost functions over r in [1, 40], golden-section
// search to 1e-6 absolute in r.
OptimizeResult optimize_r_infinite();
OptimizeResult optimize_r(unsigned t, unsigned k);

// Bits per k-mer of the reference method this structure is compared
// against: 1.44 * log2(16k / 2.08) + 2.08. Throws ParamError for k < 1.
double prior_method_bits(unsigned k);

struct ComparisonRow {
    unsigned k;
    double infinite_bits;
    double finite_r;
    double finite_bits;
    double prior_bits;
};

// One row per k: the unbounded-cascade optimum, the t-level optimum, and
// the prior method's cost.
std::vector<ComparisonRow> comparison_table(const std::vector<unsigned>& ks,
                                            unsigned t);

}  // namespace cbf::model

#endif
