#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cbf/cascade.hpp"
#include "cbf/errors.hpp"
#include "cbf/ingest.hpp"
#include "cbf/kmer.hpp"
#include "cbf/model.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 0xCBF15EEDULL;

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct BuildOpts {
    unsigned k = 0;
    unsigned t = 4;
    std::string r = "auto";
    bool canonical = false;
    std::uint64_t seed = kDefaultSeed;
    std::string input;
    std::string output;
};

void print_stats_block(const cbf::CascadeIndex& ix, bool with_fill) {
    cbf::BuildStats st = ix.stats();
    std::cout << "k=" << ix.k() << '\n';
    std::cout << "canonical=" << (ix.is_canonical() ? 1 : 0) << '\n';
    std::cout << "n=" << st.n << '\n';
    std::cout << "levels=" << ix.levels().size() << '\n';
    for (std::size_t i = 0; i < st.counts.size(); ++i)
        std::cout << "count_" << i << '=' << st.counts[i] << '\n';
    for (std::size_t i = 0; i < st.bitmap_bits.size(); ++i)
        std::cout << "bitmap_bits_" << (i + 1) << '=' << st.bitmap_bits[i] << '\n';
    if (with_fill)
        for (std::size_t i = 0; i < ix.levels().size(); ++i)
            std::cout << "fill_ratio_" << (i + 1) << '='
                      << fmt6(ix.levels()[i].fill_ratio()) << '\n';
    std::cout << "tail_count=" << ix.tail().size() << '\n';
    std::cout << "tail_bits=" << st.tail_bits << '\n';
    std::cout << "total_bits=" << st.total_bits << '\n';
    std::cout << "bits_per_kmer=" << fmt6(st.bits_per_kmer) << '\n';
}

int run_build(const BuildOpts& o) {
    double r;
    if (o.r == "auto") {
        r = cbf::model::optimize_r(o.t, o.k).r;
    } else {
        try {
            std::size_t used = 0;
            r = std::stod(o.r, &used);
            if (used != o.r.size()) throw std::invalid_argument(o.r);
        } catch (const std::exception&) {
            throw cbf::ParamError("--r must be a number or 'auto', got '" +
                                  o.r + "'");
        }
        if (!(r > 0.0))
            throw cbf::ParamError("--r must be positive, got '" + o.r + "'");
    }

    std::ifstream in(o.input);
    if (!in) throw cbf::IoError("cannot open " + o.input);
    cbf::FastaReader reader(in);
    cbf::KmerSet t0 = cbf::collect_kmers(reader, o.k, o.canonical);
    if (t0.empty())
        throw cbf::ParamError("input contains no k-mers of length " +
                              std::to_string(o.k));

    cbf::CascadeIndex ix = cbf::CascadeIndex::build(t0, r, o.t, o.seed);
    cbf::save_index_file(ix, o.output);

    std::cout << "t=" << o.t << '\n';
    std::cout << "seed=" << o.seed << '\n';
    std::cout << "r=" << fmt6(r) << '\n';
    print_stats_block(ix, false);
    std::cout << "model_bits_per_kmer="
              << fmt6(cbf::model::bits_per_kmer_finite(r, o.t, o.k)) << '\n';
    return 0;
}

int run_query(const std::string& index_path) {
    cbf::CascadeIndex ix = cbf::load_index_file(index_path);
    bool any_err = false;
    std::string line;
    while (std::getline(std::cin, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        try {
            bool hit = ix.query(cbf::encode(line));
            std::cout << line << '\t' << (hit ? '1' : '0') << '\n';
        } catch (const cbf::ParamError&) {
            std::cout << line << "\tERR\n";
            any_err = true;
        }
    }
    return any_err ? 3 : 0;
}

int run_stats(const std::string& index_path) {
    cbf::CascadeIndex ix = cbf::load_index_file(index_path);
    print_stats_block(ix, true);
    return 0;
}

int run_model(unsigned k, unsigned t, bool compare) {
    if (compare) {
        std::cout << "k,infinite_bits_per_kmer,cascade_bits_per_kmer,prior_bits_per_kmer\n";
        for (const auto& row : cbf::model::comparison_table({16, 32, 64, 128}, t))
            std::cout << row.k << ',' << fmt6(row.infinite_bits) << ','
                      << fmt6(row.finite_bits) << ',' << fmt6(row.prior_bits)
                      << '\n';
        return 0;
    }
    if (k == 0)
        throw cbf::ParamError("model requires --k (or --compare)");
    cbf::model::OptimizeResult opt = cbf::model::optimize_r(t, k);
    std::cout << "r=" << fmt6(opt.r) << " bits=" << fmt6(opt.bits) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);

    CLI::App app{"Exact k-mer set membership via a cascade of Bloom filters"};
    app.require_subcommand(1);

    BuildOpts bo;
    CLI::App* build = app.add_subcommand("build", "Build an index from FASTA");
    build->add_option("--k", bo.k, "k-mer length")
        ->required()
        ->check(CLI::Range(1u, 128u));
    build->add_option("--t", bo.t, "number of filter levels")
        ->check(CLI::Range(1u, 16u));
    build->add_option("--r", bo.r, "bits per element, or 'auto'");
    build->add_flag("--canonical", bo.canonical,
                    "collapse strands to canonical k-mers");
    build->add_option("--seed", bo.seed, "master hash seed");
    build->add_option("-i,--input", bo.input, "FASTA input path")->required();
    build->add_option("-o,--output", bo.output, "index output path")->required();

    std::string query_index;
    CLI::App* query = app.add_subcommand(
        "query", "Query k-mers from standard input, one per line");
    query->add_option("-x,--index", query_index, "index file")->required();

    std::string stats_index;
    CLI::App* stats = app.add_subcommand("stats", "Print stored index stats");
    stats->add_option("-x,--index", stats_index, "index file")->required();

    unsigned model_k = 0;
    unsigned model_t = 4;
    bool model_compare = false;
    CLI::App* model = app.add_subcommand("model", "Print analytic sizing");
    model->add_option("--k", model_k, "k-mer length")->check(CLI::Range(1u, 128u));
    model->add_option("--t", model_t, "number of filter levels")
        ->check(CLI::Range(1u, 16u));
    model->add_flag("--compare", model_compare,
                    "CSV comparison across k = 16, 32, 64, 128");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (build->parsed()) return run_build(bo);
        if (query->parsed()) return run_query(query_index);
        if (stats->parsed()) return run_stats(stats_index);
        if (model->parsed()) return run_model(model_k, model_t, model_compare);
    } catch (const cbf::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const cbf::ParamError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const cbf::FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
