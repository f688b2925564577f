#include "melon/io.hpp"

#include <array>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "melon/errors.hpp"

namespace melon {

using nlohmann::json;

json map_to_json(const CombinatorialMap& b) {
    json j;
    j["p"] = b.p();
    j["n"] = b.vertex_count();
    j["sigma"] = std::vector<Halfedge>(b.sigma().image().begin(), b.sigma().image().end());
    j["tau"] = std::vector<Halfedge>(b.tau().image().begin(), b.tau().image().end());
    if (b.root()) {
        j["root"] = *b.root();
        if (is_connected(b)) j["code"] = canonical_code(b).code;
    } else {
        j["root"] = nullptr;
    }
    return j;
}

CombinatorialMap map_from_json(const json& j) {
    try {
        std::optional<Halfedge> root;
        if (j.contains("root") && !j.at("root").is_null()) root = j.at("root").get<Halfedge>();
        return CombinatorialMap(j.at("p").get<unsigned>(), Permutation(j.at("sigma").get<std::vector<Halfedge>>()),
                                Permutation(j.at("tau").get<std::vector<Halfedge>>()), root);
    } catch (const json::exception& e) {
        throw ContractViolation(std::string("malformed map JSON: ") + e.what());
    }
}

json hypergraph_to_json(const Hypergraph& h) {
    json edges = json::array();
    for (const Hyperedge& e : h.hyperedges()) {
        json vs = json::array();
        for (const auto& [v, l] : e.vertices) vs.push_back({v, l});
        edges.push_back({{"vertices", vs}, {"m", e.multiplicity}});
    }
    return {{"num_vertices", h.num_vertices()}, {"hyperedges", edges}};
}

Hypergraph hypergraph_from_json(const json& j) {
    try {
        std::vector<Hyperedge> edges;
        for (const json& e : j.at("hyperedges")) {
            Hyperedge he;
            for (const json& pair : e.at("vertices")) {
                he.vertices.emplace_back(pair.at(0).get<std::uint32_t>(), pair.at(1).get<std::uint32_t>());
            }
            he.multiplicity = e.at("m").get<std::uint32_t>();
            edges.push_back(std::move(he));
        }
        return Hypergraph(j.at("num_vertices").get<std::size_t>(), std::move(edges));
    } catch (const json::exception& e) {
        throw ContractViolation(std::string("malformed hypergraph JSON: ") + e.what());
    }
}

json tensor_to_json(const SymTensor& t) {
    return {{"p", t.order()},
            {"N", t.dimension()},
            {"entries", std::vector<double>(t.entries().begin(), t.entries().end())}};
}

SymTensor tensor_from_json(const json& j) {
    try {
        return SymTensor(j.at("p").get<unsigned>(), j.at("N").get<std::size_t>(),
                         j.at("entries").get<std::vector<double>>());
    } catch (const json::exception& e) {
        throw ContractViolation(std::string("malformed tensor JSON: ") + e.what());
    }
}

namespace {

void put_le(std::ostream& out, std::uint64_t value, int bytes) {
    for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((value >> (8 * i)) & 0xff));
}

std::uint64_t get_le(std::istream& in, int bytes) {
    std::uint64_t value = 0;
    for (int i = 0; i < bytes; ++i) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) throw ContractViolation("truncated tensor stream");
        value |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
    }
    return value;
}

}  // namespace

void write_tensor_binary(std::ostream& out, const SymTensor& t) {
    put_le(out, t.order(), 4);
    put_le(out, t.dimension(), 4);
    for (double x : t.entries()) {
        std::uint64_t bits;
        std::memcpy(&bits, &x, sizeof bits);
        put_le(out, bits, 8);
    }
}

SymTensor read_tensor_binary(std::istream& in) {
    const auto p = static_cast<unsigned>(get_le(in, 4));
    const auto N = static_cast<std::size_t>(get_le(in, 4));
    if (N == 0) throw ContractViolation("tensor dimension must be positive");
    std::vector<double> entries(SymTensor::storage_size(p, N));
    for (double& x : entries) {
        const std::uint64_t bits = get_le(in, 8);
        std::memcpy(&x, &bits, sizeof x);
    }
    return SymTensor(p, N, std::move(entries));
}

std::string format_double(double x) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", x);
    return buf.data();
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig base) {
    if (!j.is_object()) throw ContractViolation("config must be a JSON object");
    try {
        if (j.contains("p")) base.p = j.at("p").get<unsigned>();
        if (j.contains("n_max")) base.n_max = j.at("n_max").get<unsigned>();
        if (j.contains("N_grid")) base.N_grid = j.at("N_grid").get<std::vector<std::size_t>>();
        if (j.contains("samples")) base.samples = j.at("samples").get<std::size_t>();
        if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
        const double tail = j.value("tail_index", base.dist.tail_index);
        if (j.contains("dist")) {
            base.dist = EntryDistribution::parse(j.at("dist").get<std::string>(), tail);
        } else {
            base.dist.tail_index = tail;
        }
        if (j.contains("k")) base.k = j.at("k").get<unsigned>();
        if (j.contains("random_unit")) base.random_unit = j.at("random_unit").get<bool>();
        if (j.contains("threads")) base.threads = j.at("threads").get<unsigned>();
        if (j.contains("out")) base.out = j.at("out").get<std::string>();
    } catch (const json::exception& e) {
        throw ContractViolation(std::string("malformed config JSON: ") + e.what());
    }
    return base;
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out.str();
}

}  // namespace melon
