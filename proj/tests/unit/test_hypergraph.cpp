#include <doctest.h>

#include "melon/errors.hpp"
#include "melon/hypergraph.hpp"

using namespace melon;

namespace {

CombinatorialMap melon_map() { return CombinatorialMap::with_standard_vertices(3, {3, 4, 5, 0, 1, 2}); }
CombinatorialMap dumbbell1() { return CombinatorialMap::with_standard_vertices(3, {2, 3, 0, 1, 5, 4}); }

// Two melons inserted in a row: vertices L(a1,a2,a3), R(a1,a2,a6),
// B1(a3,a4,a5), B2(a4,a5,a6). Edges by minimal halfedge:
// e0=a1, e1=a2, e2=a3, e3=a6, e4=a4, e5=a5.
CombinatorialMap chain() {
    return CombinatorialMap::with_standard_vertices(3, {3, 4, 6, 0, 1, 11, 2, 9, 10, 7, 8, 5});
}

// Every partition pi for which H(dual(b_pi)) is a double hypertree.
std::vector<EdgePartition> brute_force_partitions(const CombinatorialMap& b) {
    std::vector<EdgePartition> out;
    for (const EdgePartition& pi : enumerate_edge_partitions(b.edge_count())) {
        if (is_double_hypertree(hypergraph_of(dual(merge_edges(b, pi))))) out.push_back(pi);
    }
    return out;
}

Hypergraph branching_double_hypertree() {
    // Blocks {a1}, {a2}, {a3,a6}, {a4}, {a5} as vertices 0..4.
    return Hypergraph(5, {Hyperedge{{{0, 1}, {1, 1}, {2, 1}}, 2}, Hyperedge{{{2, 1}, {3, 1}, {4, 1}}, 2}});
}

}  // namespace

TEST_CASE("hypergraph of the dual melon") {
    const Hypergraph h = hypergraph_of(dual(melon_map().as_hypermap()));
    CHECK(h.num_vertices() == 3);
    REQUIRE(h.hyperedges().size() == 1);
    CHECK(h.hyperedges()[0].multiplicity == 2);
    CHECK(h.hyperedges()[0].order() == 3);
    CHECK(h.degree(0) == 2);
    CHECK(is_double_hypertree(h));
}

TEST_CASE("hypergraph of a single-vertex hypermap") {
    const Hypermap b(Permutation({1, 0}), Permutation({0, 1}));
    const Hypergraph h = hypergraph_of(b);
    CHECK(h.num_vertices() == 1);
    REQUIRE(h.hyperedges().size() == 1);
    CHECK(h.hyperedges()[0].multiplicity == 2);
}

TEST_CASE("hypergraph validation") {
    CHECK_THROWS_AS(Hypergraph(2, {Hyperedge{{{2, 1}}, 1}}), ContractViolation);
    CHECK_THROWS_AS(Hypergraph(2, {Hyperedge{{}, 1}}), ContractViolation);
    CHECK_THROWS_AS(Hypergraph(2, {Hyperedge{{{0, 1}}, 0}}), ContractViolation);
    CHECK_THROWS_AS(Hypergraph(2, {Hyperedge{{{0, 1}}, 1}, Hyperedge{{{0, 1}}, 1}}), ContractViolation);
}

TEST_CASE("cycles") {
    CHECK_FALSE(has_cycle(branching_double_hypertree()));
    CHECK(has_cycle(Hypergraph(2, {Hyperedge{{{0, 2}, {1, 1}}, 1}})));
    CHECK(has_cycle(Hypergraph(4, {Hyperedge{{{0, 1}, {1, 1}, {2, 1}}, 1}, Hyperedge{{{0, 1}, {1, 1}, {3, 1}}, 1}})));
}

TEST_CASE("hypertrees") {
    CHECK(is_hypertree(branching_double_hypertree().reduced()));
    CHECK(is_hypertree(Hypergraph(3, {Hyperedge{{{0, 1}, {1, 1}, {2, 1}}, 1}})));
    const Hypergraph triangle(3, {Hyperedge{{{0, 1}, {1, 1}}, 1}, Hyperedge{{{1, 1}, {2, 1}}, 1},
                                  Hyperedge{{{0, 1}, {2, 1}}, 1}});
    CHECK_FALSE(is_hypertree(triangle));
    const Hypergraph two_trees(6, {Hyperedge{{{0, 1}, {1, 1}, {2, 1}}, 1}, Hyperedge{{{3, 1}, {4, 1}, {5, 1}}, 1}});
    CHECK_FALSE(is_hypertree(two_trees));
}

TEST_CASE("double hypertrees") {
    CHECK(is_double_hypertree(branching_double_hypertree()));
    Hypergraph single = Hypergraph(5, {Hyperedge{{{0, 1}, {1, 1}, {2, 1}}, 2}, Hyperedge{{{2, 1}, {3, 1}, {4, 1}}, 1}});
    CHECK_FALSE(is_double_hypertree(single));
}

TEST_CASE("Euler deficiency") {
    CHECK(euler_deficiency(branching_double_hypertree().reduced(), 3) == 0);
    CHECK(euler_deficiency(Hypergraph(3, {Hyperedge{{{0, 1}, {1, 1}, {2, 1}}, 1}}), 3) == 0);
    const Hypergraph shared(4, {Hyperedge{{{0, 1}, {1, 1}, {2, 1}}, 1}, Hyperedge{{{0, 1}, {1, 1}, {3, 1}}, 1}});
    CHECK(euler_deficiency(shared, 3) == 1);
    CHECK_THROWS_AS(euler_deficiency(shared, 4), ContractViolation);
    const Hypergraph apart(6, {Hyperedge{{{0, 1}, {1, 1}, {2, 1}}, 1}, Hyperedge{{{3, 1}, {4, 1}, {5, 1}}, 1}});
    CHECK_THROWS_AS(euler_deficiency(apart, 3), ContractViolation);
}

TEST_CASE("melonic partition of the melon is all singletons") {
    const auto pi = is_melonic_dual(melon_map());
    REQUIRE(pi.has_value());
    CHECK(*pi == EdgePartition::singletons(3));
    const auto all = brute_force_partitions(melon_map());
    REQUIRE(all.size() == 1);
    CHECK(all[0] == *pi);
}

TEST_CASE("dumbbells are not melonic") {
    CHECK_FALSE(is_melonic_dual(dumbbell1()).has_value());
    CHECK_FALSE(is_melonic_recursive(dumbbell1()));
    CHECK(brute_force_partitions(dumbbell1()).empty());
}

TEST_CASE("chain of two melons") {
    const CombinatorialMap b = chain();
    CHECK(is_melonic_recursive(b));
    const auto pi = is_melonic_dual(b);
    REQUIRE(pi.has_value());
    CHECK(*pi == EdgePartition(6, {{0}, {1}, {2, 3}, {4}, {5}}));
    const Hypergraph h = hypergraph_of(dual(merge_edges(b, *pi)));
    CHECK(h.num_vertices() == 5);
    CHECK(h.hyperedges().size() == 2);
    CHECK(is_double_hypertree(h));
}

TEST_CASE("unsupported valences") {
    CHECK_THROWS_AS(is_melonic_dual(CombinatorialMap::with_standard_vertices(2, {3, 2, 1, 0})), Unsupported);
    CHECK_THROWS_AS(is_melonic_recursive(CombinatorialMap::with_standard_vertices(2, {3, 2, 1, 0})),
                    ContractViolation);
}

TEST_CASE("dual detector agrees with exhaustive partition search") {
    for (auto [p, n] : {std::pair{3u, 2u}, {3u, 4u}, {4u, 2u}, {4u, 3u}}) {
        for (const auto& b : enumerate_rooted_connected(p, n)) {
            const auto all = brute_force_partitions(b);
            REQUIRE(all.size() <= 1);
            const auto pi = is_melonic_dual(b);
            REQUIRE(pi.has_value() == !all.empty());
            if (pi) CHECK(*pi == all.front());
        }
    }
}

TEST_CASE("the two detectors agree") {
    for (auto [p, n] : {std::pair{3u, 2u}, {3u, 4u}, {4u, 2u}, {4u, 3u}, {4u, 4u}}) {
        std::size_t melonic = 0;
        for (const auto& b : enumerate_rooted_connected(p, n)) {
            const bool dual_says = is_melonic_dual(b).has_value();
            REQUIRE(dual_says == is_melonic_recursive(b));
            if (dual_says) {
                ++melonic;
                CHECK(b.vertex_count() % 2 == 0);
            }
        }
        if (n % 2 == 1) CHECK(melonic == 0);
    }
}

TEST_CASE("Euler deficiency of reduced dual hypergraphs") {
    for (auto [p, n] : {std::pair{3u, 2u}, {3u, 4u}, {4u, 2u}, {4u, 3u}}) {
        for (const auto& b : enumerate_rooted_connected(p, n)) {
            for (const EdgePartition& pi : enumerate_edge_partitions(b.edge_count())) {
                const Hypergraph h = hypergraph_of(dual(merge_edges(b, pi))).reduced();
                if (!h.is_uniform(p)) continue;
                const long d = euler_deficiency(h, p);
                CHECK(d >= 0);
                CHECK((d == 0) == is_hypertree(h));
            }
        }
    }
}
