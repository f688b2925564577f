#pragma once

#include <cstdint>
#include <vector>

#include "melon/exact.hpp"

namespace melon {

/// F_p(k) = C(pk+1, k) / (pk+1).
BigInt fuss_catalan(unsigned p, unsigned k);

/// The second closed form C(pk, k) / ((p-1)k+1), kept for cross-checking.
BigInt fuss_catalan_alt(unsigned p, unsigned k);

/// Number of (p-1)-Dyck paths of length np, by dynamic programming over heights.
BigInt count_dyck(unsigned p, unsigned n);

/// Lattice path with steps +1 and -(p-1).
struct DyckPath {
    unsigned p = 2;
    std::vector<int> steps;

    friend bool operator==(const DyckPath&, const DyckPath&) = default;
};

/// True when every step is +1 or -(p-1), partial sums stay nonnegative and
/// the path ends at height 0.
bool is_dyck_path(const DyckPath& d);

/// Every (p-1)-Dyck path of length np, in lexicographic order with +1 first.
std::vector<DyckPath> all_dyck_paths(unsigned p, unsigned n);

/// Vertex of a rooted plane p-uniform hypertree. Each hyperedge below a
/// vertex lists its p-1 remaining vertices in orientation order; hyperedges
/// are kept in visit order.
struct HypertreeNode {
    std::vector<std::vector<HypertreeNode>> hyperedges;

    friend bool operator==(const HypertreeNode&, const HypertreeNode&) = default;
};

struct PlaneHypertree {
    unsigned p = 2;
    HypertreeNode root;

    /// Total number of hyperedges.
    std::size_t size() const;

    friend bool operator==(const PlaneHypertree&, const PlaneHypertree&) = default;
};

/// Depth-first encoding: +1 when stepping to each vertex of a hyperedge,
/// -(p-1) once the hyperedge is fully explored.
DyckPath dyck_from_hypertree(const PlaneHypertree& h);

/// Inverse of `dyck_from_hypertree`. Throws InvalidPath on malformed input.
PlaneHypertree hypertree_from_dyck(const DyckPath& d);

/// Every rooted plane p-uniform hypertree with n hyperedges.
std::vector<PlaneHypertree> all_plane_hypertrees(unsigned p, unsigned n);

/// F_p(n) * ((p-1)!)^n, the number of rooted melonic maps with 2n vertices.
BigInt count_melonic_maps(unsigned p, unsigned n);

using SetPartition = std::vector<std::vector<unsigned>>;

/// Non-crossing partitions of {0, ..., m-1} whose block sizes are all
/// divisible by d. Blocks are sorted and ordered by minimal element.
std::vector<SetPartition> noncrossing_partitions(unsigned m, unsigned d);

/// No a < b < c < e with a, c in one block and b, e in another.
bool is_noncrossing(const SetPartition& partition);

/// Non-crossing partitions of n(p-1) points with block sizes divisible by p-1.
BigInt count_noncrossing_div(unsigned p, unsigned n);

/// Checks T = 1 + z T^p coefficient-wise up to z^K for T = sum F_p(k) z^k.
bool generating_series_check(unsigned p, unsigned K);

}  // namespace melon
