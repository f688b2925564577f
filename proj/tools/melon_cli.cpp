#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "melon/counting.hpp"
#include "melon/errors.hpp"
#include "melon/experiments.hpp"
#include "melon/hypergraph.hpp"
#include "melon/io.hpp"
#include "melon/limit_law.hpp"
#include "melon/trace.hpp"

using namespace melon;
using nlohmann::json;

namespace {

// One output table; cells are JSON scalars so both formats share the rows.
struct Table {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<json>> rows;
};

std::string cell_text(const json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

std::string join(const std::vector<std::uint32_t>& xs, char sep) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(xs[i]);
    }
    return s;
}

std::string partition_text(const EdgePartition& pi) {
    std::string s;
    for (std::size_t i = 0; i < pi.blocks().size(); ++i) {
        if (i) s += '|';
        s += join(pi.blocks()[i], ' ');
    }
    return s;
}

json exact_cell(const Rational& q) { return to_double(q); }

std::string render_csv(const std::vector<Table>& tables) {
    std::string out;
    for (std::size_t t = 0; t < tables.size(); ++t) {
        if (t) out += '\n';
        std::vector<std::vector<std::string>> rows;
        for (const auto& r : tables[t].rows) {
            std::vector<std::string> cells;
            for (const auto& v : r) cells.push_back(cell_text(v));
            rows.push_back(std::move(cells));
        }
        out += to_csv(tables[t].header, rows);
    }
    return out;
}

json table_json(const Table& t) {
    json rows = json::array();
    for (const auto& r : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = r[i];
        rows.push_back(std::move(obj));
    }
    return rows;
}

std::string render_json(const std::vector<Table>& tables) {
    if (tables.size() == 1) return table_json(tables.front()).dump(2) + "\n";
    json obj = json::object();
    for (const auto& t : tables) obj[t.name] = table_json(t);
    return obj.dump(2) + "\n";
}

Table estimate_table(const std::vector<MomentEstimate>& est) {
    Table t{"estimates",
            {"N", "n", "samples", "mean", "std_error", "variance", "median", "iqr", "target", "deviation"},
            {}};
    for (const auto& e : est) {
        t.rows.push_back({e.N, e.n, e.samples, e.mean, e.std_error, e.variance, e.median, e.iqr, e.target,
                          e.deviation});
    }
    return t;
}

Table count_table(unsigned p, unsigned n_max) {
    Table t{"counts", {"p", "n", "fuss_catalan", "dyck", "noncrossing", "melonic_maps"}, {}};
    for (unsigned n = 0; n <= n_max; ++n) {
        const std::string melonic = p >= 3 ? count_melonic_maps(p, n).str() : std::string("");
        t.rows.push_back({p, n, fuss_catalan(p, n).str(), count_dyck(p, n).str(), count_noncrossing_div(p, n).str(),
                          melonic});
    }
    return t;
}

Table classify_table(unsigned p, unsigned n) {
    Table t{"classify", {"code", "melonic", "recursive", "partition", "euler_deficiency"}, {}};
    for (const auto& b : enumerate_rooted_connected(p, n)) {
        const auto pi = is_melonic_dual(b);
        const EdgePartition used = pi ? *pi : EdgePartition::singletons(b.edge_count());
        const Hypergraph h = hypergraph_of(dual(merge_edges(b, used))).reduced();
        t.rows.push_back({join(canonical_code(b).code, ' '), pi.has_value(), is_melonic_recursive(b),
                          pi ? partition_text(*pi) : std::string(""), euler_deficiency(h, p)});
    }
    return t;
}

Table exact_moments_table(const ExperimentConfig& cfg) {
    Table t{"exact", {"code", "N", "expectation_over_N", "melonic", "alpha", "deviation"}, {}};
    for (const auto& row : lemma_tree_table(cfg.p, cfg.n_max, cfg.N_grid, cfg.dist)) {
        t.rows.push_back({join(row.code.code, ' '), row.N, exact_cell(row.expectation_over_N), row.melonic,
                          exact_cell(row.alpha), row.deviation});
    }
    return t;
}

// Monte Carlo estimate of E[Tr_b / N] for every map with n_max vertices.
Table sampled_moments_table(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto maps = enumerate_rooted_connected(cfg.p, cfg.n_max);
    Table t{"sampled", {"code", "N", "samples", "mean", "std_error"}, {}};
    for (std::size_t N : cfg.N_grid) {
        const auto rows = run_samples(cfg, N, [&](std::size_t, std::mt19937_64& rng) {
            const TraceEvaluator eval(sample_wigner(cfg.p, N, cfg.dist, rng));
            std::vector<double> out;
            for (const auto& b : maps) out.push_back(eval.trace(b) / static_cast<double>(N));
            return out;
        });
        for (std::size_t m = 0; m < maps.size(); ++m) {
            std::vector<double> values;
            for (const auto& r : rows) values.push_back(r[m]);
            const MomentEstimate e = summarize(std::move(values));
            t.rows.push_back({join(canonical_code(maps[m]).code, ' '), N, e.samples, e.mean, e.std_error});
        }
    }
    return t;
}

std::vector<Table> law_tables(unsigned p, unsigned k, unsigned grid, double eta, unsigned n_max) {
    if (grid < 2) throw ContractViolation("the density grid needs at least two points");
    const bool contracted = k > 0;
    const ContractedLaw law = contracted ? contracted_law(p, k) : ContractedLaw{p, 0};
    const double edge = contracted ? law.support_edge() : support_edge(p);
    Table density_table{"density", {"y", "density"}, {}};
    for (unsigned i = 0; i < grid; ++i) {
        // Cell midpoints, so the grid never lands on the support edge.
        const double y = edge * ((2.0 * i + 1.0) / grid - 1.0);
        density_table.rows.push_back({y, contracted ? law.density(y, eta) : density(p, y, eta)});
    }
    Table moments{"moments", {"n", "exact", "quadrature"}, {}};
    const unsigned base = contracted ? law.base_order() : p;
    for (unsigned n = 0; n <= n_max; ++n) {
        const double exact = contracted ? law.moment(n) : to_double(limit_moment(p, n));
        const double quad = law_moment_quadrature(base, n, 1e-6) / std::pow(contracted ? law.scale() : 1.0, n);
        moments.rows.push_back({n, exact, quad});
    }
    return {density_table, moments};
}

Table resolvent_table(std::size_t N, std::complex<double> z, unsigned K, std::uint64_t seed) {
    const ResolventCheck r = matrix_resolvent_check(N, z, K, seed);
    Table t{"resolvent",
            {"N", "z_re", "z_im", "K", "series_re", "series_im", "direct_re", "direct_im", "gap", "spectral_radius",
             "tail_bound"},
            {}};
    t.rows.push_back({N, z.real(), z.imag(), K, r.series.real(), r.series.imag(), r.direct.real(), r.direct.imag(),
                      r.gap, r.spectral_radius, r.tail_bound});
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial moment method for symmetric random tensors"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned p = 3;
    unsigned n = 2;
    std::vector<std::size_t> N_grid{16};
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string dist = "gaussian-gote";
    double tail_index = 3.5;
    std::string out_path;
    std::string format = "csv";
    std::string config_path;

    auto* opt_p = app.add_option("--p", p, "Tensor order");
    auto* opt_n = app.add_option("--n", n, "Number of vertices, or the largest moment order");
    auto* opt_N = app.add_option("--N", N_grid, "Dimensions (ascending)");
    auto* opt_samples = app.add_option("--samples", samples, "Samples per dimension");
    auto* opt_seed = app.add_option("--seed", seed, "Random seed");
    auto* opt_threads = app.add_option("--threads", threads, "Worker threads (0 = all cores)");
    auto* opt_dist = app.add_option("--dist", dist, "Entry law")->check(CLI::IsMember(
        {"gaussian-gote", "gaussian-offdiag-only", "rademacher", "uniform", "symmetrized-pareto"}));
    auto* opt_tail = app.add_option("--tail-index", tail_index, "Tail index of the Pareto law");
    app.add_option("--out", out_path, "Output file (default stdout)");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--config", config_path, "JSON file with experiment settings")->check(CLI::ExistingFile);

    auto* enumerate = app.add_subcommand("enumerate", "List rooted connected p-regular maps with n vertices");
    auto* classify = app.add_subcommand("classify", "Melonic classification of every enumerated map");
    auto* count = app.add_subcommand("count", "Fuss-Catalan, Dyck, non-crossing and melonic counts up to n");
    auto* moments = app.add_subcommand("moments", "Per-map expectations of Tr_b / N");
    bool exact = false;
    moments->add_flag("--exact", exact, "Exact rational expectations instead of sampling");
    auto* mc = app.add_subcommand("mc", "Monte Carlo moments of I_n / N");
    auto* var = app.add_subcommand("var", "Variance of I_n / N against N");
    auto* law = app.add_subcommand("law", "Density and moments of the limit law");
    unsigned k = 0;
    unsigned grid = 100;
    double eta = 1e-4;
    law->add_option("--k", k, "Contraction depth");
    law->add_option("--grid", grid, "Number of density points");
    law->add_option("--eta", eta, "Imaginary offset for Stieltjes inversion");
    auto* contract = app.add_subcommand("contract", "Moments of the contracted tensor");
    bool random_unit = false;
    contract->add_option("--k", k, "Contraction depth");
    contract->add_flag("--random-unit", random_unit, "Contract with a random unit vector");
    auto* heavytail = app.add_subcommand("heavytail", "Median moments under heavy-tailed entries");
    auto* resolvent = app.add_subcommand("resolvent-check", "Moment series against the matrix resolvent");
    double z_re = 3.0;
    double z_im = 0.0;
    unsigned K = 20;
    resolvent->add_option("--z", z_re, "Real part of z");
    resolvent->add_option("--z-im", z_im, "Imaginary part of z");
    resolvent->add_option("--K", K, "Truncation order");

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            cfg = config_from_json(json::parse(in));
        }
        if (opt_p->count()) cfg.p = p;
        if (opt_n->count()) cfg.n_max = n;
        if (opt_N->count()) cfg.N_grid = N_grid;
        if (opt_samples->count()) cfg.samples = samples;
        if (opt_seed->count()) cfg.seed = seed;
        if (opt_threads->count()) cfg.threads = threads;
        if (opt_tail->count()) cfg.dist.tail_index = tail_index;
        if (opt_dist->count()) {
            cfg.dist = EntryDistribution::parse(dist, cfg.dist.tail_index);
        } else if (heavytail->parsed() && config_path.empty()) {
            cfg.dist = EntryDistribution::parse("symmetrized-pareto", cfg.dist.tail_index);
        }
        if (!out_path.empty()) cfg.out = out_path;
        if (contract->parsed()) {
            if (contract->get_option("--k")->count()) cfg.k = k;
            if (random_unit) cfg.random_unit = true;
        }

        std::string text;
        if (enumerate->parsed()) {
            const auto maps = enumerate_rooted_connected(cfg.p, cfg.n_max);
            if (format == "json") {
                json arr = json::array();
                for (const auto& b : maps) arr.push_back(map_to_json(b));
                text = arr.dump(2) + "\n";
            } else {
                Table t{"maps", {"index", "code", "tau"}, {}};
                for (std::size_t i = 0; i < maps.size(); ++i) {
                    const auto& img = maps[i].tau().image();
                    t.rows.push_back({i, join(canonical_code(maps[i]).code, ' '),
                                      join(std::vector<std::uint32_t>(img.begin(), img.end()), ' ')});
                }
                text = render_csv({t});
            }
        } else {
            std::vector<Table> tables;
            if (classify->parsed()) {
                tables = {classify_table(cfg.p, cfg.n_max)};
            } else if (count->parsed()) {
                tables = {count_table(cfg.p, cfg.n_max)};
            } else if (moments->parsed()) {
                tables = {exact ? exact_moments_table(cfg) : sampled_moments_table(cfg)};
            } else if (mc->parsed()) {
                tables = {estimate_table(mc_moments(cfg))};
            } else if (var->parsed()) {
                const VarianceScaling v = variance_scaling(cfg);
                Table t{"variance", {"N", "n", "variance", "slope"}, {}};
                for (std::size_t i = 0; i < v.N.size(); ++i) t.rows.push_back({v.N[i], v.n, v.variance[i], v.slope});
                tables = {t};
            } else if (law->parsed()) {
                tables = law_tables(cfg.p, k, grid, eta, std::max(cfg.n_max, 2u));
            } else if (contract->parsed()) {
                tables = {estimate_table(contraction_experiment(cfg))};
            } else if (heavytail->parsed()) {
                tables = {estimate_table(heavy_tail_experiment(cfg))};
            } else if (resolvent->parsed()) {
                tables = {resolvent_table(cfg.N_grid.front(), {z_re, z_im}, K, cfg.seed)};
            }
            text = format == "json" ? render_json(tables) : render_csv(tables);
        }

        if (cfg.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream file(cfg.out);
            if (!file) throw ContractViolation("cannot open output file " + cfg.out);
            file << text;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
