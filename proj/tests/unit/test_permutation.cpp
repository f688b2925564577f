#include <doctest.h>

#include "melon/errors.hpp"
#include "melon/permutation.hpp"

using namespace melon;

TEST_CASE("cycles of the identity are fixed points") {
    const auto c = cycles(Permutation::identity(3));
    CHECK(c == std::vector<Cycle>{{0}, {1}, {2}});
}

TEST_CASE("cycles of two 3-cycles") {
    const Permutation sigma({1, 2, 0, 4, 5, 3});
    CHECK(cycles(sigma) == std::vector<Cycle>{{0, 1, 2}, {3, 4, 5}});
    CHECK(cycle_index(sigma) == std::vector<std::uint32_t>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("cycles start at their minimum and are sorted") {
    const Permutation tau = Permutation::from_cycles(6, {{4, 5}, {2, 0}, {3, 1}});
    CHECK(cycles(tau) == std::vector<Cycle>{{0, 2}, {1, 3}, {4, 5}});
    CHECK(tau.is_involution());
    CHECK_FALSE(tau.has_fixed_point());
}

TEST_CASE("non-bijections are rejected") {
    CHECK_THROWS_AS(Permutation({0, 0, 1}), ContractViolation);
    CHECK_THROWS_AS(Permutation({0, 3}), ContractViolation);
    CHECK_THROWS_AS(Permutation::from_cycles(3, {{0, 1}, {1, 2}}), ContractViolation);
}

TEST_CASE("inverse and conjugation") {
    const Permutation s({2, 0, 3, 1});
    const Permutation inv = s.inverse();
    for (Halfedge h = 0; h < 4; ++h) CHECK(inv(s(h)) == h);

    const Permutation theta({3, 2, 1, 0});
    const Permutation c = s.conjugated_by(theta);
    for (Halfedge h = 0; h < 4; ++h) CHECK(c(theta(h)) == theta(s(h)));
    CHECK_THROWS_AS(s.conjugated_by(Permutation::identity(3)), ContractViolation);
}

TEST_CASE("involution and fixed points") {
    CHECK(Permutation::identity(2).is_involution());
    CHECK(Permutation::identity(2).has_fixed_point());
    CHECK_FALSE(Permutation({1, 2, 0}).is_involution());
}
