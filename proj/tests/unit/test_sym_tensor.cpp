#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "melon/distributions.hpp"
#include "melon/errors.hpp"
#include "melon/sym_tensor.hpp"

using namespace melon;

namespace {

SymTensor random_tensor(unsigned p, std::size_t N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    SymTensor t(p, N);
    for (double& x : t.entries()) x = normal(rng);
    return t;
}

Eigen::MatrixXd random_rotation(std::size_t N, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd a(N, N);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    return qr.householderQ();
}

}  // namespace

TEST_CASE("storage size") {
    CHECK(SymTensor::storage_size(3, 4) == 20);
    CHECK(SymTensor::storage_size(2, 5) == 15);
    CHECK(SymTensor::storage_size(0, 7) == 1);
    CHECK(SymTensor(4, 6).entries().size() == 126);
    CHECK_THROWS_AS(SymTensor(3, 2, std::vector<double>(3)), ContractViolation);
}

TEST_CASE("colex ranking follows the successor order") {
    for (unsigned p = 1; p <= 4; ++p) {
        const std::size_t N = 5;
        SymTensor t(p, N);
        MultiIndex idx(p, 0);
        std::size_t r = 0;
        do {
            CHECK(t.rank(idx) == r);
            CHECK(t.unrank(r) == idx);
            ++r;
        } while (next_sorted_index(idx, N));
        CHECK(r == SymTensor::storage_size(p, N));
    }
}

TEST_CASE("reads are symmetric") {
    SymTensor t(3, 4);
    const std::uint32_t idx[3] = {2, 0, 3};
    t.set(idx, 1.5);
    std::vector<std::uint32_t> perm{0, 2, 3};
    do {
        CHECK(t(perm) == 1.5);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const std::uint32_t other[3] = {0, 0, 3};
    CHECK(t(other) == 0.0);
}

TEST_CASE("dense roundtrip and Frobenius norm") {
    const SymTensor t = random_tensor(3, 4, 1);
    const auto dense = t.dense();
    CHECK(SymTensor::from_dense(3, 4, dense) == t);
    double sq = 0.0;
    for (double x : dense) sq += x * x;
    CHECK(t.frobenius_norm_squared() == doctest::Approx(sq).epsilon(1e-14));
}

TEST_CASE("distinct permutations") {
    const std::uint32_t a[3] = {1, 1, 1}, b[3] = {1, 1, 2}, c[3] = {0, 1, 2};
    CHECK(distinct_permutations(a) == 1);
    CHECK(distinct_permutations(b) == 3);
    CHECK(distinct_permutations(c) == 6);
}

TEST_CASE("contraction") {
    const SymTensor t = random_tensor(3, 4, 2);
    SUBCASE("k = 0 leaves the tensor unchanged") { CHECK(contract(t, {}) == t); }
    SUBCASE("matrix against a basis vector gives a row") {
        const SymTensor m = random_tensor(2, 4, 3);
        const SymTensor row = contract(m, {Eigen::VectorXd::Unit(4, 0)});
        for (std::uint32_t j = 0; j < 4; ++j) {
            const std::uint32_t i1[1] = {j}, i2[2] = {0, j};
            CHECK(row(i1) == m(i2));
        }
    }
    SUBCASE("full contraction equals the inner product with u x u x u") {
        Eigen::VectorXd u(4);
        u << 0.3, -1.0, 0.5, 2.0;
        const SymTensor s = contract(t, {u, u, u});
        CHECK(s.order() == 0);
        double direct = 0.0;
        const auto dense = t.dense();
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k) direct += u(i) * u(j) * u(k) * dense[(i * 4 + j) * 4 + k];
        CHECK(s.entries()[0] == doctest::Approx(direct).epsilon(1e-13));
    }
    SUBCASE("linearity in the vector") {
        Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(4, -1.0, 1.0), v = Eigen::VectorXd::Constant(4, 0.25);
        const SymTensor sum = contract(t, {u + v});
        const SymTensor a = contract(t, {u}), b = contract(t, {v});
        for (std::size_t r = 0; r < sum.entries().size(); ++r) {
            CHECK(sum.entries()[r] == doctest::Approx(a.entries()[r] + b.entries()[r]).epsilon(1e-13));
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(contract(t, {Eigen::VectorXd::Zero(3)}), ContractViolation);
        const Eigen::VectorXd u = Eigen::VectorXd::Zero(4);
        CHECK_THROWS_AS(contract(t, {u, u, u, u}), ContractViolation);
    }
}

TEST_CASE("multilinear transform") {
    const SymTensor t = random_tensor(3, 4, 4);
    const SymTensor same = multilinear_transform(t, Eigen::MatrixXd::Identity(4, 4));
    for (std::size_t r = 0; r < t.entries().size(); ++r) CHECK(same.entries()[r] == doctest::Approx(t.entries()[r]));
    const SymTensor rotated = multilinear_transform(t, random_rotation(4, 5));
    CHECK(rotated.frobenius_norm_squared() == doctest::Approx(t.frobenius_norm_squared()).epsilon(1e-12));
    // Matrix case: U M U^T.
    const SymTensor m = random_tensor(2, 4, 6);
    const Eigen::MatrixXd u = random_rotation(4, 7);
    const Eigen::MatrixXd expect = u * m.as_matrix() * u.transpose();
    CHECK((multilinear_transform(m, u).as_matrix() - expect).norm() < 1e-12);
}

TEST_CASE("variance profile") {
    const std::uint32_t aaa[3] = {1, 1, 1}, aab[3] = {1, 1, 2}, abc[3] = {0, 1, 2};
    CHECK(variance_profile(aaa) == 3);
    CHECK(variance_profile(aab) == 1);
    CHECK(variance_profile(abc) == Rational(1, 2));
    const std::uint32_t aa[2] = {0, 0}, ab[2] = {0, 1};
    CHECK(variance_profile(aa) == 2);
    CHECK(variance_profile(ab) == 1);
    // sigma^2 = p / number of distinct orderings.
    const std::uint32_t abcd[4] = {0, 1, 1, 3};
    CHECK(variance_profile(abcd) == Rational(4, distinct_permutations(abcd)));
    const EntryDistribution off = EntryDistribution::parse("gaussian-offdiag-only");
    CHECK(off.entry_variance(aaa) == Rational(1, 2));
}

TEST_CASE("distribution moments") {
    const Rational v(1, 2);
    CHECK(EntryDistribution::parse("gaussian-gote").moment(4, v) == Rational(3, 4));
    CHECK(EntryDistribution::parse("gaussian-gote").moment(3, v) == 0);
    CHECK(EntryDistribution::parse("rademacher").moment(4, v) == Rational(1, 4));
    CHECK(EntryDistribution::parse("uniform").moment(2, v) == v);
    CHECK(EntryDistribution::parse("uniform").moment(4, Rational(1)) == Rational(9, 5));
    CHECK_THROWS_AS(EntryDistribution::parse("symmetrized-pareto").moment(2, v), Unsupported);
    CHECK_THROWS_AS(EntryDistribution::parse("cauchy"), ContractViolation);
    CHECK(EntryDistribution::parse("uniform").name() == "uniform");
}

TEST_CASE("GOTE entry variance") {
    const std::size_t N = 5;
    const int samples = 10000;
    double sum = 0.0, sq = 0.0;
    const std::uint32_t idx[3] = {0, 1, 2};
    for (int s = 0; s < samples; ++s) {
        const double x = sample_gote(3, N, static_cast<std::uint64_t>(s))(idx);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / samples;
    const double var = sq / samples - mean * mean;
    CHECK(std::abs(var / (1.0 / 50.0) - 1.0) < 0.05);
}

TEST_CASE("sampling is deterministic in the seed") {
    CHECK(sample_gote(3, 6, 11) == sample_gote(3, 6, 11));
    CHECK_FALSE(sample_gote(3, 6, 11) == sample_gote(3, 6, 12));
}

TEST_CASE("Rademacher magnitudes") {
    const SymTensor t = sample_wigner(3, 4, EntryDistribution::parse("rademacher"), std::uint64_t{3});
    MultiIndex idx(3, 0);
    do {
        const double expected = std::sqrt(to_double(variance_profile(idx)) / 16.0);
        CHECK(std::abs(t(idx)) == doctest::Approx(expected).epsilon(1e-14));
    } while (next_sorted_index(idx, 4));
    const std::uint32_t abc[3] = {0, 1, 2};
    CHECK(std::abs(t(abc)) == doctest::Approx(1.0 / std::sqrt(2.0 * 16.0)));
}

TEST_CASE("symmetrized Pareto draws are standardized") {
    const EntryDistribution d = EntryDistribution::parse("symmetrized-pareto", 8.0);
    std::mt19937_64 rng(5);
    double sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = d.draw_standard(rng);
        CHECK(std::abs(x) >= 1.0 / std::sqrt(8.0 / 6.0) - 1e-12);
        sq += x * x;
    }
    CHECK(sq / n == doctest::Approx(1.0).epsilon(0.03));
    CHECK_THROWS_AS(EntryDistribution::parse("symmetrized-pareto", 2.0), ContractViolation);
}
