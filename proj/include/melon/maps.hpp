#pragma once

#include <compare>
#include <cstdint>
#include <iterator>
#include <optional>
#include <vector>

#include "melon/permutation.hpp"

namespace melon {

/// A pair of permutations (sigma, tau) on a common set of halfedges. The
/// cycles of sigma are vertices and the cycles of tau are hyperedges.
struct Hypermap {
    Permutation sigma;
    Permutation tau;
    std::optional<Halfedge> root;

    Hypermap() = default;
    Hypermap(Permutation sigma, Permutation tau, std::optional<Halfedge> root = std::nullopt);

    std::size_t size() const { return sigma.size(); }

    friend bool operator==(const Hypermap&, const Hypermap&) = default;
};

/// Set partition of the edge indices {0, ..., edge_count-1}. Blocks are kept
/// sorted internally and ordered by their minimal element.
class EdgePartition {
public:
    EdgePartition() = default;

    /// Throws InvalidPartition unless `blocks` partition {0, ..., edge_count-1}.
    EdgePartition(std::size_t edge_count, std::vector<std::vector<std::uint32_t>> blocks);

    /// From a restricted growth string (block label per element).
    static EdgePartition from_labels(std::span<const std::uint32_t> labels);
    static EdgePartition singletons(std::size_t edge_count);
    static EdgePartition single_block(std::size_t edge_count);

    std::size_t edge_count() const { return block_of_.size(); }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::vector<std::uint32_t>>& blocks() const { return blocks_; }
    std::uint32_t block_of(std::uint32_t edge) const { return block_of_[edge]; }

    friend bool operator==(const EdgePartition& a, const EdgePartition& b) { return a.blocks_ == b.blocks_; }

private:
    std::vector<std::vector<std::uint32_t>> blocks_;
    std::vector<std::uint32_t> block_of_;
};

/// Sequence of integers identifying a rooted map up to root-preserving relabelling.
struct CanonicalCode {
    std::vector<std::uint32_t> code;

    friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
    friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
};

/// A p-regular combinatorial map: sigma has only p-cycles and tau is a
/// fixed-point-free involution.
///
/// Vertices are the sigma-cycles and edges the tau-cycles, both indexed in
/// the order of `cycles()` (by minimal halfedge).
class CombinatorialMap {
public:
    CombinatorialMap() = default;

    /// Validates p-regularity and the involution; throws ContractViolation.
    CombinatorialMap(unsigned p, Permutation sigma, Permutation tau,
                     std::optional<Halfedge> root = std::nullopt);

    /// sigma = (0 .. p-1)(p .. 2p-1)..., tau given as an image array.
    static CombinatorialMap with_standard_vertices(unsigned p, std::vector<Halfedge> tau_image,
                                                   std::optional<Halfedge> root = Halfedge{0});

    unsigned p() const { return p_; }
    std::size_t halfedge_count() const { return sigma_.size(); }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const Permutation& sigma() const { return sigma_; }
    const Permutation& tau() const { return tau_; }
    std::optional<Halfedge> root() const { return root_; }

    const std::vector<Cycle>& vertices() const { return vertices_; }
    /// Each edge as (smaller halfedge, larger halfedge).
    const std::vector<std::pair<Halfedge, Halfedge>>& edges() const { return edges_; }
    std::uint32_t edge_of(Halfedge h) const { return edge_of_[h]; }
    std::uint32_t vertex_of(Halfedge h) const { return vertex_of_[h]; }

    Hypermap as_hypermap() const { return Hypermap(sigma_, tau_, root_); }

    /// Conjugates both permutations by theta and moves the root to theta(root).
    CombinatorialMap relabelled(const Permutation& theta) const;

    friend bool operator==(const CombinatorialMap& a, const CombinatorialMap& b) {
        return a.p_ == b.p_ && a.sigma_ == b.sigma_ && a.tau_ == b.tau_ && a.root_ == b.root_;
    }

private:
    unsigned p_ = 0;
    Permutation sigma_;
    Permutation tau_;
    std::optional<Halfedge> root_;
    std::vector<Cycle> vertices_;
    std::vector<std::pair<Halfedge, Halfedge>> edges_;
    std::vector<std::uint32_t> edge_of_;
    std::vector<std::uint32_t> vertex_of_;
};

/// b^dagger = (tau, sigma), same root.
Hypermap dual(const Hypermap& b);

/// Merges the edges of each block of `pi` into one hyperedge. A merged
/// tau-cycle concatenates its member 2-cycles ordered by minimal halfedge.
Hypermap merge_edges(const CombinatorialMap& b, const EdgePartition& pi);

/// True iff <sigma, tau> acts transitively on the halfedges.
bool is_connected(const Hypermap& b);
bool is_connected(const CombinatorialMap& b);

/// Relabels halfedges in first-visit order of a breadth-first traversal from
/// the root (sigma neighbour before tau neighbour) and lists p, the vertex
/// count and (sigma, tau) images in that labelling.
CanonicalCode canonical_code(const CombinatorialMap& b);

/// Guard on the number of halfedges enumerated by `enumerate_rooted_connected`.
inline constexpr std::size_t kMaxEnumeratedHalfedges = 22;

/// One representative per class of rooted connected p-regular maps with n
/// vertices, sorted by canonical code. Empty when n*p is odd.
std::vector<CombinatorialMap> enumerate_rooted_connected(unsigned p, unsigned n);

/// The n-vertex cycle as a 2-regular map, rooted at halfedge 0.
CombinatorialMap cycle_map(unsigned n);

/// Set partitions of {0, ..., m-1} in restricted-growth-string order.
class EdgePartitions {
public:
    explicit EdgePartitions(std::size_t m);

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = EdgePartition;
        using difference_type = std::ptrdiff_t;
        using pointer = const EdgePartition*;
        using reference = const EdgePartition&;

        iterator() = default;
        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

    private:
        friend class EdgePartitions;
        explicit iterator(std::size_t m);
        std::vector<std::uint32_t> labels_;
        std::vector<std::uint32_t> prefix_max_;
        EdgePartition current_;
        bool done_ = true;
    };

    iterator begin() const { return iterator(m_); }
    iterator end() const { return iterator(); }

private:
    std::size_t m_;
};

inline EdgePartitions enumerate_edge_partitions(std::size_t m) { return EdgePartitions(m); }

}  // namespace melon
