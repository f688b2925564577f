#include <doctest.h>

#include <cmath>

#include "melon/counting.hpp"
#include "melon/errors.hpp"
#include "melon/expectation.hpp"
#include "melon/experiments.hpp"
#include "melon/limit_law.hpp"

using namespace melon;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.p = 3;
    cfg.n_max = 2;
    cfg.N_grid = {6};
    cfg.samples = 200;
    cfg.seed = 11;
    return cfg;
}

Rational exact_moment(unsigned p, unsigned n, std::size_t N, const EntryDistribution& dist) {
    Rational total = 0;
    for (const auto& b : enumerate_rooted_connected(p, n)) total += expected_trace_partition(b, N, dist);
    return total / Rational(N);
}

}  // namespace

TEST_CASE("configuration validation") {
    ExperimentConfig cfg = small_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.N_grid = {};
    CHECK_THROWS_AS(cfg.validate(), ContractViolation);
    cfg.N_grid = {8, 4};
    CHECK_THROWS_AS(cfg.validate(), ContractViolation);
    cfg.N_grid = {4};
    cfg.samples = 1;
    CHECK_THROWS_AS(cfg.validate(), ContractViolation);
}

TEST_CASE("summary statistics") {
    const MomentEstimate e = summarize({4.0, 1.0, 3.0, 2.0, 5.0});
    CHECK(e.samples == 5);
    CHECK(e.mean == doctest::Approx(3.0));
    CHECK(e.variance == doctest::Approx(2.5));
    CHECK(e.std_error == doctest::Approx(std::sqrt(0.5)));
    CHECK(e.median == doctest::Approx(3.0));
    CHECK(e.iqr == doctest::Approx(2.0));
    CHECK_THROWS_AS(summarize({1.0}), ContractViolation);
    CHECK(summarize({1.0, 2.0, 3.0}).mean == summarize({3.0, 1.0, 2.0}).mean);
}

TEST_CASE("log-log slope") {
    CHECK(log_log_slope({1.0, 2.0, 4.0}, {8.0, 2.0, 0.5}) == doctest::Approx(-2.0));
    CHECK_THROWS_AS(log_log_slope({1.0}, {1.0}), ContractViolation);
}

TEST_CASE("results do not depend on the thread count") {
    ExperimentConfig cfg = small_config();
    cfg.samples = 40;
    cfg.threads = 1;
    const auto one = mc_moments(cfg);
    cfg.threads = 4;
    const auto four = mc_moments(cfg);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].mean == four[i].mean);
        CHECK(one[i].variance == four[i].variance);
    }
    cfg.seed = 12;
    CHECK(mc_moments(cfg)[1].mean != one[1].mean);
}

TEST_CASE("Monte Carlo matches the exact expectation") {
    SUBCASE("p = 3 at N = 6") {
        const auto est = mc_moments(small_config());
        REQUIRE(est.size() == 2);
        CHECK(est[0].n == 1);
        CHECK(est[0].mean == 0.0);
        CHECK(est[0].target == 0.0);
        CHECK(est[1].target == 1.0);
        const double exact = to_double(exact_moment(3, 2, 6, EntryDistribution{}));
        CHECK(std::abs(est[1].mean - exact) < 4.0 * est[1].std_error);
    }
    SUBCASE("odd matrix moments average to zero") {
        ExperimentConfig cfg = small_config();
        cfg.p = 2;
        cfg.n_max = 3;
        cfg.N_grid = {20};
        const auto est = mc_moments(cfg);
        CHECK(std::abs(est[0].mean) < 4.0 * est[0].std_error);
        CHECK(std::abs(est[2].mean) < 4.0 * est[2].std_error);
    }
    SUBCASE("GOE fourth moment at N = 100") {
        ExperimentConfig cfg = small_config();
        cfg.p = 2;
        cfg.n_max = 4;
        cfg.N_grid = {100};
        const auto est = mc_moments(cfg);
        const double N = 100.0;
        const double exact = 2.0 + 5.0 / N + 5.0 / (N * N);
        CHECK(std::abs(est[3].mean - exact) < 4.0 * est[3].std_error);
        CHECK(est[3].target == 2.0);
    }
    SUBCASE("Rademacher entries") {
        ExperimentConfig cfg = small_config();
        cfg.dist = EntryDistribution::parse("rademacher");
        const auto est = mc_moments(cfg);
        const double exact = to_double(exact_moment(3, 2, 6, cfg.dist));
        CHECK(std::abs(est[1].mean - exact) < 4.0 * est[1].std_error);
    }
}

TEST_CASE("standard error shrinks like one over the root of the sample count") {
    ExperimentConfig cfg = small_config();
    cfg.N_grid = {20};
    cfg.samples = 400;
    const double a = mc_moments(cfg)[1].std_error;
    cfg.samples = 800;
    const double b = mc_moments(cfg)[1].std_error;
    CHECK(a / b == doctest::Approx(std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("variance scaling") {
    ExperimentConfig cfg = small_config();
    CHECK_THROWS_AS(variance_scaling(cfg), ContractViolation);
    cfg.N_grid = {4, 12};
    CHECK_THROWS_AS(variance_scaling(cfg), ContractViolation);
    cfg.p = 2;
    cfg.N_grid = {8, 16, 32};
    cfg.samples = 300;
    const VarianceScaling v = variance_scaling(cfg);
    CHECK(v.n == 2);
    CHECK(v.N.size() == 3);
    // Var tr(M^2)/N decays like N^-2 for Wigner matrices.
    CHECK(v.slope == doctest::Approx(-2.0).epsilon(0.15));
}

TEST_CASE("lemma table") {
    const auto rows = lemma_tree_table(3, 2, {4, 8}, EntryDistribution{});
    CHECK(rows.size() == 10);
    std::size_t melonic = 0;
    for (const auto& row : rows) {
        if (row.melonic) {
            ++melonic;
            CHECK(row.alpha == Rational(1, 2));
            const Rational n(row.N);
            CHECK(row.expectation_over_N == Rational(1, 2) + (3 * n + 2) / (2 * n * n));
        } else {
            CHECK(row.alpha == 0);
            const Rational n(row.N);
            CHECK(row.expectation_over_N == (n + 2) / (n * n));
        }
        CHECK(row.deviation == doctest::Approx(to_double(row.expectation_over_N - row.alpha)));
    }
    CHECK(melonic == 4);
}

TEST_CASE("melonic alphas add up to the limit moments") {
    for (auto [p, m] : {std::pair{3u, 1u}, {3u, 2u}, {4u, 1u}}) {
        Rational sum = 0;
        for (const auto& row : lemma_tree_table(p, 2 * m, {2}, EntryDistribution{})) sum += row.alpha;
        CHECK(sum == Rational(limit_moment(p, 2 * m)));
        CHECK(Rational(count_melonic_maps(p, m)) * melonic_alpha(p, 2 * m) == Rational(fuss_catalan(p, m)));
    }
    const auto rows = lemma_tree_table(4, 2, {2}, EntryDistribution{});
    for (const auto& row : rows) {
        if (row.melonic) CHECK(row.alpha == Rational(1, 6));
    }
}

TEST_CASE("lemma table under other entry laws") {
    for (const char* name : {"rademacher", "uniform", "gaussian-offdiag-only"}) {
        const auto rows = lemma_tree_table(3, 4, {64}, EntryDistribution::parse(name));
        for (const auto& row : rows) {
            CHECK(std::abs(row.deviation) < 0.5);
        }
    }
}

TEST_CASE("contraction experiment") {
    ExperimentConfig cfg = small_config();
    cfg.samples = 60;
    cfg.k = 0;
    const auto plain = mc_moments(cfg);
    const auto contracted = contraction_experiment(cfg);
    REQUIRE(plain.size() == contracted.size());
    for (std::size_t i = 0; i < plain.size(); ++i) CHECK(plain[i].mean == contracted[i].mean);

    cfg.k = 1;
    cfg.N_grid = {40};
    cfg.samples = 200;
    const auto one = contraction_experiment(cfg);
    CHECK(one[1].target == doctest::Approx(0.5));
    // E tr(C^2)/N = N^-2 sum_{i,j} var X_{ij0} = (N^2 + 3N + 2) / (2 N^2).
    const double N = 40.0;
    const double exact = (N * N + 3.0 * N + 2.0) / (2.0 * N * N);
    CHECK(std::abs(one[1].mean - exact) < 4.0 * one[1].std_error);

    cfg.random_unit = true;
    const auto random = contraction_experiment(cfg);
    CHECK(std::abs(random[1].mean - 0.5) < 0.1);

    cfg.random_unit = false;
    cfg.p = 4;
    cfg.k = 2;
    cfg.N_grid = {12};
    CHECK(contraction_experiment(cfg)[1].target == doctest::Approx(1.0 / 3.0));
    cfg.k = 3;
    CHECK_THROWS_AS(contraction_experiment(cfg), ContractViolation);
    cfg.k = 1;
    cfg.dist = EntryDistribution::parse("rademacher");
    CHECK_THROWS_AS(contraction_experiment(cfg), ContractViolation);
}

TEST_CASE("heavy-tail pipeline") {
    ExperimentConfig cfg = small_config();
    cfg.dist = EntryDistribution::parse("symmetrized-pareto", 3.5);
    cfg.N_grid = {12};
    const auto est = heavy_tail_experiment(cfg);
    REQUIRE(est.size() == 2);
    CHECK(est[1].deviation == doctest::Approx(est[1].median - est[1].target));
    CHECK(est[1].iqr > 0.0);
    CHECK(std::isfinite(est[1].median));

    // Gaussian control: the median pipeline sees the same samples as mc_moments.
    ExperimentConfig control = small_config();
    control.samples = 50;
    const auto medians = heavy_tail_experiment(control);
    const auto means = mc_moments(control);
    CHECK(medians[1].mean == means[1].mean);
    CHECK(medians[1].deviation == doctest::Approx(medians[1].median - 1.0));
}

TEST_CASE("matrix resolvent check") {
    SUBCASE("zero matrix") {
        const ResolventCheck r = matrix_resolvent_check(Eigen::MatrixXd::Zero(3, 3), {2.0, 1.0}, 5);
        CHECK(std::abs(r.series - r.direct) < 1e-15);
        CHECK(r.spectral_radius == 0.0);
    }
    SUBCASE("Wigner matrix") {
        const ResolventCheck r = matrix_resolvent_check(60, {4.0, 0.5}, 20, 3);
        CHECK(r.spectral_radius < 2.6);
        CHECK(r.gap <= r.tail_bound + 1e-12);
        CHECK(std::abs(r.direct - stieltjes(2, {4.0, 0.5})) < 0.05);
    }
    SUBCASE("points near the spectrum are rejected") {
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(2, 2);
        CHECK_THROWS_AS(matrix_resolvent_check(m, {1.0, 0.0}, 3), DomainError);
    }
}
