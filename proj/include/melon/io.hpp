#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "melon/experiments.hpp"
#include "melon/hypergraph.hpp"
#include "melon/maps.hpp"
#include "melon/sym_tensor.hpp"

namespace melon {

/// {p, n, sigma, tau, root, code}; `code` is present only for rooted connected maps.
nlohmann::json map_to_json(const CombinatorialMap& b);
/// Reads {p, sigma, tau, root}; `n` and `code` are ignored.
CombinatorialMap map_from_json(const nlohmann::json& j);

/// {num_vertices, hyperedges: [{vertices: [[v, l_v], ...], m}]}.
nlohmann::json hypergraph_to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);

/// {p, N, entries} with entries in colex order.
nlohmann::json tensor_to_json(const SymTensor& t);
SymTensor tensor_from_json(const nlohmann::json& j);

/// Little-endian: uint32 p, uint32 N, then C(N+p-1, p) float64 entries in colex order.
void write_tensor_binary(std::ostream& out, const SymTensor& t);
/// Throws ContractViolation on a truncated or malformed stream.
SymTensor read_tensor_binary(std::istream& in);

/// printf %.17g: 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

/// Fields of ExperimentConfig read from a JSON object; absent keys keep `base`.
/// Keys: p, n_max, N_grid, samples, seed, dist, tail_index, k, random_unit, threads, out.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

/// Rows of string cells joined by commas, one line per row.
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

}  // namespace melon
