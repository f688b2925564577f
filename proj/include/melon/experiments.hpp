#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "melon/distributions.hpp"
#include "melon/exact.hpp"
#include "melon/maps.hpp"

namespace melon {

struct ExperimentConfig {
    unsigned p = 3;
    unsigned n_max = 2;
    std::vector<std::size_t> N_grid{16};
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    EntryDistribution dist{};
    /// Contraction depth for `contraction_experiment`.
    unsigned k = 0;
    /// Contract with a random unit vector instead of e_1.
    bool random_unit = false;
    /// Worker threads; 0 uses the hardware concurrency.
    unsigned threads = 0;
    std::string out;

    /// Throws ContractViolation when the grid is empty or not ascending,
    /// samples < 2, or p < 2.
    void validate() const;
};

struct MomentEstimate {
    std::size_t N = 0;
    unsigned n = 0;
    std::size_t samples = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double variance = 0.0;
    double median = 0.0;
    double iqr = 0.0;
    double target = 0.0;
    /// mean - target, or median - target for the heavy-tail experiment.
    double deviation = 0.0;
};

/// Summary statistics of one sample buffer. Sums run over the sorted buffer
/// with pairwise summation, so the result does not depend on sample order.
MomentEstimate summarize(std::vector<double> values);

/// Runs `sample(N, index, rng)` for every sample index on cfg.threads workers.
/// The generator of sample i depends only on (cfg.seed, N, i).
/// Returns one row per sample, in sample order.
std::vector<std::vector<double>> run_samples(
    const ExperimentConfig& cfg, std::size_t N,
    const std::function<std::vector<double>(std::size_t, std::mt19937_64&)>& sample);

/// Estimates of E[I_n / N] for n = 1..n_max at every N of the grid, with
/// target limit_moment(p, n). Throws ResourceError when the maps would exceed
/// the enumeration guard.
std::vector<MomentEstimate> mc_moments(const ExperimentConfig& cfg);

struct VarianceScaling {
    unsigned n = 0;
    std::vector<std::size_t> N;
    std::vector<double> variance;
    /// Least-squares slope of log variance against log N.
    double slope = 0.0;
};

/// Sample variance of I_n/N with n = n_max at every N. Needs at least two
/// grid points, each double the previous.
VarianceScaling variance_scaling(const ExperimentConfig& cfg);

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

struct LemmaRow {
    CanonicalCode code;
    std::size_t N = 0;
    Rational expectation_over_N;
    bool melonic = false;
    /// (p-1)!^{-|V|/2} for melonic maps, 0 otherwise.
    Rational alpha;
    double deviation = 0.0;
};

/// Exact E[Tr_b(W)] / N for every b in the enumeration with n vertices and
/// every N of the grid.
std::vector<LemmaRow> lemma_tree_table(unsigned p, unsigned n, const std::vector<std::size_t>& N_grid,
                                       const EntryDistribution& dist);

/// I_n / N of N^{k/2} W . u^k for Gaussian W; target C(p-1,k)^{-n/2} times
/// the order p-k limit moment. Throws ContractViolation for k > p-2.
std::vector<MomentEstimate> contraction_experiment(const ExperimentConfig& cfg);

/// Same pipeline as mc_moments with medians and interquartile ranges; the
/// deviation is median - target.
std::vector<MomentEstimate> heavy_tail_experiment(const ExperimentConfig& cfg);

struct ResolventCheck {
    std::complex<double> series;
    std::complex<double> direct;
    double gap = 0.0;
    double spectral_radius = 0.0;
    /// (rho/|z|)^{K+1} / (|z| - rho), the size of the dropped series tail.
    double tail_bound = 0.0;
};

/// Truncated moment series against (1/N) Tr (zI - W)^{-1} for a symmetric
/// matrix W. Throws DomainError when |z| <= rho + 1e-3.
ResolventCheck matrix_resolvent_check(const Eigen::MatrixXd& w, std::complex<double> z, unsigned K);

/// Same with W a sampled Gaussian Wigner matrix (off-diagonal variance 1/N).
ResolventCheck matrix_resolvent_check(std::size_t N, std::complex<double> z, unsigned K, std::uint64_t seed);

}  // namespace melon
