#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "melon/errors.hpp"
#include "melon/hypergraph.hpp"
#include "melon/io.hpp"

using namespace melon;

TEST_CASE("map JSON round trip") {
    for (const auto& b : enumerate_rooted_connected(3, 4)) {
        const nlohmann::json j = map_to_json(b);
        CHECK(j.at("p") == 3);
        CHECK(j.at("n") == 4);
        CHECK(j.at("code").get<std::vector<std::uint32_t>>() == canonical_code(b).code);
        CHECK(map_from_json(nlohmann::json::parse(j.dump())) == b);
    }
    CHECK_THROWS_AS(map_from_json(nlohmann::json{{"p", 3}}), ContractViolation);
    CHECK_THROWS_AS(map_from_json(nlohmann::json{{"p", 3}, {"sigma", {1, 2, 0}}, {"tau", {1, 0, 2}}}),
                    ContractViolation);
}

TEST_CASE("hypergraph JSON round trip") {
    const auto b = CombinatorialMap::with_standard_vertices(3, {3, 4, 5, 0, 1, 2});
    const Hypergraph h = hypergraph_of(dual(b.as_hypermap()));
    const nlohmann::json j = hypergraph_to_json(h);
    const Hypergraph back = hypergraph_from_json(j);
    CHECK(hypergraph_to_json(back) == j);
    CHECK(back.num_vertices() == h.num_vertices());
    CHECK(is_double_hypertree(back) == is_double_hypertree(h));
    CHECK_THROWS_AS(hypergraph_from_json(nlohmann::json{{"hyperedges", 1}}), ContractViolation);
}

TEST_CASE("tensor serialization") {
    SymTensor t(3, 4);
    for (std::size_t i = 0; i < t.entries().size(); ++i) t.entries()[i] = 0.1 * static_cast<double>(i) - 1.0 / 3.0;

    SUBCASE("JSON") {
        const SymTensor back = tensor_from_json(nlohmann::json::parse(tensor_to_json(t).dump()));
        CHECK(back.order() == 3);
        CHECK(back.dimension() == 4);
        CHECK(std::equal(back.entries().begin(), back.entries().end(), t.entries().begin()));
    }
    SUBCASE("binary") {
        std::stringstream buffer;
        write_tensor_binary(buffer, t);
        const std::string bytes = buffer.str();
        CHECK(bytes.size() == 8 + 8 * t.entries().size());
        CHECK(bytes.substr(0, 8) == std::string("\x03\x00\x00\x00\x04\x00\x00\x00", 8));
        const SymTensor back = read_tensor_binary(buffer);
        CHECK(std::equal(back.entries().begin(), back.entries().end(), t.entries().begin()));
    }
    SUBCASE("truncated stream") {
        std::stringstream buffer;
        write_tensor_binary(buffer, t);
        std::string bytes = buffer.str();
        bytes.pop_back();
        std::istringstream cut(bytes);
        CHECK_THROWS_AS(read_tensor_binary(cut), ContractViolation);
    }
}

TEST_CASE("double formatting round trips") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
        CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("configuration from JSON") {
    const auto j = nlohmann::json::parse(
        R"({"p": 4, "n_max": 3, "N_grid": [8, 16], "samples": 50, "seed": 7,
            "dist": "symmetrized-pareto", "tail_index": 3.0, "k": 1, "random_unit": true, "threads": 2})");
    const ExperimentConfig cfg = config_from_json(j);
    CHECK(cfg.p == 4);
    CHECK(cfg.n_max == 3);
    CHECK((cfg.N_grid == std::vector<std::size_t>{8, 16}));
    CHECK(cfg.samples == 50);
    CHECK(cfg.seed == 7);
    CHECK(cfg.dist.kind == DistributionKind::SymmetrizedPareto);
    CHECK(cfg.dist.tail_index == 3.0);
    CHECK(cfg.k == 1);
    CHECK(cfg.random_unit);
    CHECK(cfg.threads == 2);

    ExperimentConfig base;
    base.samples = 999;
    CHECK(config_from_json(nlohmann::json::object(), base).samples == 999);
    CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), ContractViolation);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"p", "three"}}), ContractViolation);
    CHECK_THROWS_AS(config_from_json(nlohmann::json{{"dist", "cauchy"}}), ContractViolation);
}

TEST_CASE("CSV output") {
    CHECK(to_csv({"a", "b"}, {{"1", "2"}, {"3", "4"}}) == "a,b\n1,2\n3,4\n");
    CHECK(to_csv({"x"}, {}) == "x\n");
}
