#include "melon/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <thread>

#include "melon/errors.hpp"
#include "melon/hypergraph.hpp"
#include "melon/expectation.hpp"
#include "melon/limit_law.hpp"
#include "melon/trace.hpp"

namespace melon {

void ExperimentConfig::validate() const {
    if (p < 2) throw ContractViolation("p must be at least 2");
    if (N_grid.empty()) throw ContractViolation("the N grid is empty");
    for (std::size_t i = 0; i < N_grid.size(); ++i) {
        if (N_grid[i] == 0) throw ContractViolation("grid dimensions must be positive");
        if (i > 0 && N_grid[i] <= N_grid[i - 1]) throw ContractViolation("the N grid must be ascending");
    }
    if (samples < 2) throw ContractViolation("at least two samples are needed");
}

namespace {

double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

double quantile(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

// Maps needed for I_1..I_nmax are enumerated before any worker starts.
void prepare_classes(unsigned p, unsigned n_max) {
    for (unsigned n = 1; n <= n_max; ++n) {
        if ((static_cast<std::size_t>(p) * n) % 2 != 0) continue;
        if (p > 2 && static_cast<std::size_t>(p) * n > kMaxEnumeratedHalfedges) {
            throw ResourceError("moment order exceeds the map enumeration guard");
        }
        balanced_classes(p, n);
    }
}

std::vector<double> moments_of(const SymTensor& t, unsigned n_min, unsigned n_max) {
    const TraceEvaluator eval(t);
    const double N = static_cast<double>(t.dimension());
    std::vector<double> out;
    for (unsigned n = n_min; n <= n_max; ++n) out.push_back(balanced_invariant(n, eval) / N);
    return out;
}

std::vector<MomentEstimate> collect(const std::vector<std::vector<double>>& rows, std::size_t N,
                                    unsigned n_min, const std::function<double(unsigned)>& target,
                                    bool use_median) {
    std::vector<MomentEstimate> out;
    const std::size_t count = rows.empty() ? 0 : rows.front().size();
    for (std::size_t j = 0; j < count; ++j) {
        std::vector<double> values;
        values.reserve(rows.size());
        for (const auto& row : rows) values.push_back(row[j]);
        MomentEstimate e = summarize(std::move(values));
        e.N = N;
        e.n = n_min + static_cast<unsigned>(j);
        e.target = target(e.n);
        e.deviation = (use_median ? e.median : e.mean) - e.target;
        out.push_back(e);
    }
    return out;
}

std::vector<MomentEstimate> wigner_pipeline(const ExperimentConfig& cfg, bool use_median) {
    cfg.validate();
    prepare_classes(cfg.p, cfg.n_max);
    std::vector<MomentEstimate> out;
    for (std::size_t N : cfg.N_grid) {
        const auto rows = run_samples(cfg, N, [&](std::size_t, std::mt19937_64& rng) {
            return moments_of(sample_wigner(cfg.p, N, cfg.dist, rng), 1, cfg.n_max);
        });
        auto est = collect(rows, N, 1, [&](unsigned n) { return to_double(limit_moment(cfg.p, n)); },
                           use_median);
        out.insert(out.end(), est.begin(), est.end());
    }
    return out;
}

}  // namespace

MomentEstimate summarize(std::vector<double> values) {
    if (values.size() < 2) throw ContractViolation("at least two samples are needed");
    std::sort(values.begin(), values.end());
    const auto S = static_cast<double>(values.size());
    MomentEstimate e;
    e.samples = values.size();
    e.mean = pairwise_sum(values.data(), values.size()) / S;
    std::vector<double> squares(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) squares[i] = (values[i] - e.mean) * (values[i] - e.mean);
    std::sort(squares.begin(), squares.end());
    e.variance = pairwise_sum(squares.data(), squares.size()) / (S - 1.0);
    e.std_error = std::sqrt(e.variance / S);
    e.median = quantile(values, 0.5);
    e.iqr = quantile(values, 0.75) - quantile(values, 0.25);
    return e;
}

std::vector<std::vector<double>> run_samples(
    const ExperimentConfig& cfg, std::size_t N,
    const std::function<std::vector<double>(std::size_t, std::mt19937_64&)>& sample) {
    std::vector<std::vector<double>> rows(cfg.samples);
    unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.samples));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cfg.samples) return;
            try {
                auto rng = make_rng(cfg.seed, {N, i});
                rows[i] = sample(i, rng);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = cfg.samples;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

std::vector<MomentEstimate> mc_moments(const ExperimentConfig& cfg) { return wigner_pipeline(cfg, false); }

std::vector<MomentEstimate> heavy_tail_experiment(const ExperimentConfig& cfg) {
    return wigner_pipeline(cfg, true);
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ContractViolation("slope needs two or more points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

VarianceScaling variance_scaling(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.N_grid.size() < 2) throw ContractViolation("variance scaling needs at least two dimensions");
    for (std::size_t i = 1; i < cfg.N_grid.size(); ++i) {
        if (cfg.N_grid[i] != 2 * cfg.N_grid[i - 1]) {
            throw ContractViolation("consecutive dimensions must differ by a factor of 2");
        }
    }
    const unsigned n = cfg.n_max;
    prepare_classes(cfg.p, n);
    VarianceScaling out;
    out.n = n;
    std::vector<double> xs;
    for (std::size_t N : cfg.N_grid) {
        const auto rows = run_samples(cfg, N, [&](std::size_t, std::mt19937_64& rng) {
            return moments_of(sample_wigner(cfg.p, N, cfg.dist, rng), n, n);
        });
        std::vector<double> values;
        for (const auto& row : rows) values.push_back(row[0]);
        out.N.push_back(N);
        out.variance.push_back(summarize(std::move(values)).variance);
        xs.push_back(static_cast<double>(N));
    }
    out.slope = log_log_slope(xs, out.variance);
    return out;
}

std::vector<LemmaRow> lemma_tree_table(unsigned p, unsigned n, const std::vector<std::size_t>& N_grid,
                                       const EntryDistribution& dist) {
    std::vector<LemmaRow> out;
    for (const CombinatorialMap& b : enumerate_rooted_connected(p, n)) {
        const bool melonic = p >= 3 ? is_melonic_dual(b).has_value() : false;
        const Rational alpha = melonic ? melonic_alpha(p, b.vertex_count()) : Rational(0);
        const CanonicalCode code = canonical_code(b);
        for (std::size_t N : N_grid) {
            LemmaRow row;
            row.code = code;
            row.N = N;
            row.expectation_over_N = expected_trace_partition(b, N, dist) / Rational(N);
            row.melonic = melonic;
            row.alpha = alpha;
            row.deviation = to_double(row.expectation_over_N - alpha);
            out.push_back(std::move(row));
        }
    }
    return out;
}

std::vector<MomentEstimate> contraction_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.k + 2 > cfg.p && cfg.k != 0) throw ContractViolation("contraction depth must satisfy k <= p-2");
    if (cfg.dist.kind != DistributionKind::GaussianGote) {
        throw ContractViolation("the contraction experiment runs on Gaussian tensors only");
    }
    const unsigned q = cfg.p - cfg.k;
    prepare_classes(q, cfg.n_max);
    const double factor = to_double(binomial(cfg.p - 1, cfg.k));
    std::vector<MomentEstimate> out;
    for (std::size_t N : cfg.N_grid) {
        const auto rows = run_samples(cfg, N, [&](std::size_t, std::mt19937_64& rng) {
            const SymTensor w = sample_wigner(cfg.p, N, cfg.dist, rng);
            if (cfg.k == 0) return moments_of(w, 1, cfg.n_max);
            Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(N));
            if (cfg.random_unit) {
                std::normal_distribution<double> normal;
                for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = normal(rng);
                u.normalize();
            } else {
                u(0) = 1.0;
            }
            SymTensor c = contract(w, std::vector<Eigen::VectorXd>(cfg.k, u));
            const double scale = std::pow(static_cast<double>(N), 0.5 * cfg.k);
            for (double& x : c.entries()) x *= scale;
            return moments_of(c, 1, cfg.n_max);
        });
        auto est = collect(
            rows, N, 1,
            [&](unsigned n) { return to_double(limit_moment(q, n)) / std::pow(factor, 0.5 * n); }, false);
        out.insert(out.end(), est.begin(), est.end());
    }
    return out;
}

ResolventCheck matrix_resolvent_check(const Eigen::MatrixXd& w, std::complex<double> z, unsigned K) {
    if (w.rows() != w.cols() || w.rows() == 0) throw ContractViolation("matrix must be square and nonempty");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w, Eigen::EigenvaluesOnly);
    const double rho = solver.eigenvalues().cwiseAbs().maxCoeff();
    if (std::abs(z) <= rho + 1e-3) throw DomainError("|z| is too close to the spectrum");
    const auto N = w.rows();
    ResolventCheck out;
    out.spectral_radius = rho;
    out.series = resolvent_series(SymTensor::from_matrix(w), z, K);
    const Eigen::MatrixXcd a = z * Eigen::MatrixXcd::Identity(N, N) - w.cast<std::complex<double>>();
    const Eigen::MatrixXcd inverse = a.partialPivLu().inverse();
    CompensatedSum re, im;
    for (Eigen::Index i = 0; i < N; ++i) {
        re.add(inverse(i, i).real());
        im.add(inverse(i, i).imag());
    }
    out.direct = std::complex<double>(re.value(), im.value()) / static_cast<double>(N);
    out.gap = std::abs(out.series - out.direct);
    out.tail_bound = std::pow(rho / std::abs(z), K + 1) / (std::abs(z) - rho);
    return out;
}

ResolventCheck matrix_resolvent_check(std::size_t N, std::complex<double> z, unsigned K, std::uint64_t seed) {
    const SymTensor w = sample_gote(2, N, seed);
    return matrix_resolvent_check(w.as_matrix(), z, K);
}

}  // namespace melon
