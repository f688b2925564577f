#include "melon/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "melon/errors.hpp"

namespace melon {

EntryDistribution EntryDistribution::parse(const std::string& name, double tail_index) {
    static const std::map<std::string, DistributionKind> kinds = {
        {"gaussian-gote", DistributionKind::GaussianGote},
        {"gaussian-offdiag-only", DistributionKind::GaussianOffdiagOnly},
        {"rademacher", DistributionKind::Rademacher},
        {"uniform", DistributionKind::Uniform},
        {"symmetrized-pareto", DistributionKind::SymmetrizedPareto},
    };
    auto it = kinds.find(name);
    if (it == kinds.end()) throw ContractViolation("unknown distribution: " + name);
    if (it->second == DistributionKind::SymmetrizedPareto && !(tail_index > 2.0)) {
        throw ContractViolation("symmetrized-pareto needs a tail index above 2");
    }
    return EntryDistribution{it->second, tail_index};
}

std::string EntryDistribution::name() const {
    switch (kind) {
        case DistributionKind::GaussianGote: return "gaussian-gote";
        case DistributionKind::GaussianOffdiagOnly: return "gaussian-offdiag-only";
        case DistributionKind::Rademacher: return "rademacher";
        case DistributionKind::Uniform: return "uniform";
        case DistributionKind::SymmetrizedPareto: return "symmetrized-pareto";
    }
    return "unknown";
}

Rational variance_profile(std::span<const std::uint32_t> index) {
    if (index.empty()) throw ContractViolation("variance profile needs p >= 1");
    std::map<std::uint32_t, unsigned> counts;
    for (std::uint32_t i : index) ++counts[i];
    BigInt numerator = 1;
    for (const auto& [value, c] : counts) numerator *= factorial(c);
    return Rational(numerator, factorial(static_cast<unsigned>(index.size()) - 1));
}

Rational EntryDistribution::entry_variance(std::span<const std::uint32_t> index) const {
    if (kind == DistributionKind::GaussianOffdiagOnly) {
        return Rational(1, factorial(static_cast<unsigned>(index.size()) - 1));
    }
    return variance_profile(index);
}

bool EntryDistribution::has_moment_oracle() const { return kind != DistributionKind::SymmetrizedPareto; }

Rational EntryDistribution::moment(unsigned m, const Rational& variance) const {
    if (!has_moment_oracle()) throw Unsupported("no closed-form moments for the heavy-tailed law");
    if (m % 2 == 1) return 0;
    const unsigned k = m / 2;
    const Rational var_k = power(variance, k);
    switch (kind) {
        case DistributionKind::GaussianGote:
        case DistributionKind::GaussianOffdiagOnly: {
            BigInt double_factorial = 1;
            for (unsigned j = 1; j < m; j += 2) double_factorial *= j;
            return var_k * double_factorial;
        }
        case DistributionKind::Rademacher:
            return var_k;
        case DistributionKind::Uniform:
            // Uniform on [-a, a] with a^2 = 3 variance: E X^{2k} = a^{2k} / (2k+1).
            {
            const BigInt three_k = boost::multiprecision::pow(BigInt(3), k);
            return var_k * Rational(three_k) / Rational(2 * k + 1);
        }
        case DistributionKind::SymmetrizedPareto:
            break;
    }
    throw Unsupported("no closed-form moments for this law");
}

double EntryDistribution::draw_standard(std::mt19937_64& rng) const {
    switch (kind) {
        case DistributionKind::GaussianGote:
        case DistributionKind::GaussianOffdiagOnly:
            return std::normal_distribution<double>(0.0, 1.0)(rng);
        case DistributionKind::Rademacher:
            return std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
        case DistributionKind::Uniform:
            return std::uniform_real_distribution<double>(-std::sqrt(3.0), std::sqrt(3.0))(rng);
        case DistributionKind::SymmetrizedPareto: {
            // |X| = U^{-1/alpha} on [1, inf) has E X^2 = alpha / (alpha - 2).
            const double u = 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
            const double magnitude = std::pow(u, -1.0 / tail_index);
            const double sign = std::bernoulli_distribution(0.5)(rng) ? 1.0 : -1.0;
            return sign * magnitude / std::sqrt(tail_index / (tail_index - 2.0));
        }
    }
    throw ContractViolation("unknown distribution kind");
}

std::mt19937_64 make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
    std::vector<std::uint32_t> words;
    words.push_back(static_cast<std::uint32_t>(seed));
    words.push_back(static_cast<std::uint32_t>(seed >> 32));
    for (std::uint64_t s : stream) {
        words.push_back(static_cast<std::uint32_t>(s));
        words.push_back(static_cast<std::uint32_t>(s >> 32));
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

SymTensor sample_wigner(unsigned p, std::size_t N, const EntryDistribution& dist, std::mt19937_64& rng) {
    if (p < 1 || N < 1) throw ContractViolation("sampling needs p >= 1 and N >= 1");
    SymTensor t(p, N);
    const double scale = std::pow(static_cast<double>(N), -0.5 * static_cast<double>(p - 1));
    // The standard deviation depends only on the multiplicity pattern of the index.
    std::map<std::vector<unsigned>, double> sd_cache;
    MultiIndex idx(p, 0);
    std::size_t r = 0;
    do {
        std::vector<unsigned> pattern;
        for (std::size_t i = 0; i < idx.size();) {
            std::size_t j = i;
            while (j < idx.size() && idx[j] == idx[i]) ++j;
            pattern.push_back(static_cast<unsigned>(j - i));
            i = j;
        }
        std::sort(pattern.begin(), pattern.end());
        auto it = sd_cache.find(pattern);
        if (it == sd_cache.end()) {
            it = sd_cache.emplace(pattern, std::sqrt(to_double(dist.entry_variance(idx)))).first;
        }
        t.entries()[r++] = scale * it->second * dist.draw_standard(rng);
    } while (next_sorted_index(idx, N));
    return t;
}

SymTensor sample_wigner(unsigned p, std::size_t N, const EntryDistribution& dist, std::uint64_t seed) {
    auto rng = make_rng(seed, {p, N});
    return sample_wigner(p, N, dist, rng);
}

SymTensor sample_gote(unsigned p, std::size_t N, std::uint64_t seed) {
    return sample_wigner(p, N, EntryDistribution{DistributionKind::GaussianGote, 0.0}, seed);
}

}  // namespace melon
