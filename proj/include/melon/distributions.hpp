#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>

#include "melon/exact.hpp"
#include "melon/sym_tensor.hpp"

namespace melon {

enum class DistributionKind {
    GaussianGote,
    GaussianOffdiagOnly,
    Rademacher,
    Uniform,
    SymmetrizedPareto,
};

/// Law of the standardized tensor entries. Every kind is centered and
/// symmetric; entries are scaled to the variance profile of their index.
struct EntryDistribution {
    DistributionKind kind = DistributionKind::GaussianGote;
    /// Tail index alpha of the symmetrized Pareto law (needs alpha > 2).
    double tail_index = 3.5;

    /// Parses gaussian-gote, gaussian-offdiag-only, rademacher, uniform,
    /// symmetrized-pareto. Throws ContractViolation otherwise.
    static EntryDistribution parse(const std::string& name, double tail_index = 3.5);
    std::string name() const;

    /// Variance of the unnormalized entry at `index` (before dividing by N^{p-1}).
    /// gaussian-offdiag-only gives every entry the off-diagonal value 1/(p-1)!.
    Rational entry_variance(std::span<const std::uint32_t> index) const;

    /// Whether `moment` is available (false for the heavy-tailed law).
    bool has_moment_oracle() const;

    /// E[X^m] for an entry of variance `variance`. Throws Unsupported for the
    /// heavy-tailed law.
    Rational moment(unsigned m, const Rational& variance) const;

    /// One centered draw with unit variance.
    double draw_standard(std::mt19937_64& rng) const;
};

/// sigma^2 = prod_a c_a! / (p-1)!, equal to p / (number of distinct orderings).
Rational variance_profile(std::span<const std::uint32_t> index);

/// Generator for a deterministic stream keyed by a seed and a list of stream ids.
std::mt19937_64 make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

/// Wigner tensor: one draw per sorted multi-index, scaled to variance
/// entry_variance / N^{p-1}.
SymTensor sample_wigner(unsigned p, std::size_t N, const EntryDistribution& dist, std::mt19937_64& rng);
SymTensor sample_wigner(unsigned p, std::size_t N, const EntryDistribution& dist, std::uint64_t seed);

/// Gaussian orthogonal tensor ensemble.
SymTensor sample_gote(unsigned p, std::size_t N, std::uint64_t seed);

}  // namespace melon
