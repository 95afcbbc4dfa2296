#include "cbf/model.hpp"

#include <cmath>
#include <string>

#include "cbf/errors.hpp"

namespace cbf::model {

namespace {

template <typename F>
double golden_min(F f, double a, double b, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

void check_r(double r) {
    if (!(r > 0.0))
        throw ParamError("bits per element must be positive, got " +
                         std::to_string(r));
}

}  // namespace

double fp_rate(double r) {
    check_r(r);
    return std::pow(fp_base, r);
}

double bits_per_kmer_infinite(double r) {
    check_r(r);
    double p = std::pow(fp_base, r);
    return (1.0 + 8.0 * p) * r / (1.0 - p);
}

double bits_per_kmer_finite(double r, unsigned t, unsigned k) {
    check_r(r);
    if (t < 1) throw ParamError("level count must be at least 1");
    if (k < 1) throw ParamError("k must be at least 1");
    // Level i holds the expected |T_{i-1}| elements at r bits each: odd
    // levels descend from T_0 (factor c^((i-1)/2 r)), even levels from the
    // 8N neighbor pool (factor 8 c^(i/2 r)).
    double sum = 0.0;
    for (unsigned i = 1; i <= t; ++i) {
        if (i % 2 == 1)
            sum += std::pow(fp_base, ((i - 1) / 2) * r);
        else
            sum += 8.0 * std::pow(fp_base, (i / 2) * r);
    }
    double tail = 2.0 * k * std::pow(fp_base, ((t + 1) / 2) * r);
    if (t % 2 == 1) tail *= 8.0;
    return r * sum + tail;
}

OptimizeResult optimize_r_infinite() {
    double r = golden_min([](double x) { return bits_per_kmer_infinite(x); },
                          1.0, 40.0, 1e-6);
    return {r, bits_per_kmer_infinite(r)};
}

OptimizeResult optimize_r(unsigned t, unsigned k) {
    if (t < 1) throw ParamError("level count must be at least 1");
    if (k < 1) throw ParamError("k must be at least 1");
    auto cost = [t, k](double x) { return bits_per_kmer_finite(x, t, k); };
    double r = golden_min(cost, 1.0, 40.0, 1e-6);
    return {r, cost(r)};
}

double prior_method_bits(unsigned k) {
    if (k < 1) throw ParamError("k must be at least 1");
    return 1.44 * std::log2(16.0 * k / 2.08) + 2.08;
}

std::vector<ComparisonRow> comparison_table(const std::vector<unsigned>& ks,
                                            unsigned t) {
    if (ks.empty()) throw ParamError("k list is empty");
    OptimizeResult inf = optimize_r_infinite();
    std::vector<ComparisonRow> rows;
    rows.reserve(ks.size());
    for (unsigned k : ks) {
        OptimizeResult fin = optimize_r(t, k);
        rows.push_back({k, inf.bits, fin.r, fin.bits, prior_method_bits(k)});
    }
    return rows;
}

}  // namespace cbf::model
