#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "melon/maps.hpp"

namespace melon {

/// A hyperedge as a vertex multiset: (vertex, l_v(e)) pairs sorted by vertex,
/// together with its multiplicity m(e).
struct Hyperedge {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> vertices;
    std::uint32_t multiplicity = 1;

    /// |e| = sum of l_v(e).
    std::size_t order() const;

    friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

class Hypergraph {
public:
    Hypergraph() = default;

    /// Validates vertex indices, positive incidences and multiplicities, and
    /// that no two hyperedges carry the same multiset.
    Hypergraph(std::size_t num_vertices, std::vector<Hyperedge> hyperedges);

    /// Builds hyperedges from raw vertex lists; equal multisets collapse into
    /// one hyperedge whose multiplicity counts them. Order of first appearance is kept.
    static Hypergraph from_multisets(std::size_t num_vertices,
                                     const std::vector<std::vector<std::uint32_t>>& multisets);

    std::size_t num_vertices() const { return num_vertices_; }
    const std::vector<Hyperedge>& hyperedges() const { return hyperedges_; }

    /// d(v) = sum over e of m(e) * l_v(e).
    std::size_t degree(std::uint32_t v) const;

    /// Same hyperedges with every multiplicity forgotten (set to 1).
    Hypergraph reduced() const;

    bool is_uniform(std::size_t p) const;

    friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

private:
    std::size_t num_vertices_ = 0;
    std::vector<Hyperedge> hyperedges_;
};

/// Vertices are sigma-cycles, hyperedges the tau-cycles as vertex multisets.
Hypergraph hypergraph_of(const Hypermap& b);

/// Cycle in the vertex/hyperedge incidence multigraph; l_v(e) >= 2 counts as
/// a cycle of length one. Multiplicities m(e) are ignored.
bool has_cycle(const Hypergraph& h);

/// Every pair of vertices is linked through hyperedges. True for zero or one vertex.
bool is_connected(const Hypergraph& h);

/// Connected and acyclic (multiplicities ignored).
bool is_hypertree(const Hypergraph& h);

/// Every multiplicity equals 2 and the reduced hypergraph is a hypertree.
bool is_double_hypertree(const Hypergraph& h);

/// 1 - |V| + (p-1)|E| of the reduced hypergraph. Throws ContractViolation
/// when h is disconnected or not p-uniform.
long euler_deficiency(const Hypergraph& h, unsigned p);

/// The edge partition pi making H(dual(b_pi)) a double hypertree, if any.
/// Found by peeling leaf hyperedge pairs of the dual hypergraph and checked
/// against `is_double_hypertree` before returning. Throws Unsupported for p = 2
/// and ContractViolation for p < 2 or a disconnected map.
std::optional<EdgePartition> is_melonic_dual(const CombinatorialMap& b);

/// Melon removal on the multigraph G(b): repeatedly delete a vertex pair
/// joined by p-1 parallel edges and splice their external edges. Succeeds on
/// reaching a single melon. Throws ContractViolation for p < 3.
bool is_melonic_recursive(const CombinatorialMap& b);

}  // namespace melon
