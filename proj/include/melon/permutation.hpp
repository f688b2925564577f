#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace melon {

using Halfedge = std::uint32_t;
using Cycle = std::vector<Halfedge>;

/// A bijection of the ground set {0, ..., size-1}.
class Permutation {
public:
    Permutation() = default;

    /// Throws ContractViolation when `image` is not a bijection.
    explicit Permutation(std::vector<Halfedge> image);

    static Permutation identity(std::size_t size);

    /// Builds a permutation from disjoint cycles; elements not listed are fixed.
    static Permutation from_cycles(std::size_t size, const std::vector<Cycle>& cycles);

    std::size_t size() const { return image_.size(); }
    Halfedge operator()(Halfedge h) const { return image_[h]; }
    std::span<const Halfedge> image() const { return image_; }

    Permutation inverse() const;
    bool is_involution() const;
    bool has_fixed_point() const;

    /// Returns theta * this * theta^-1, i.e. the same permutation on relabelled points.
    Permutation conjugated_by(const Permutation& theta) const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<Halfedge> image_;
};

/// Cycles of `perm`, each starting at its minimal element, sorted by that element.
std::vector<Cycle> cycles(const Permutation& perm);

/// For every point, the index of its cycle in the order returned by `cycles`.
std::vector<std::uint32_t> cycle_index(const Permutation& perm);

}  // namespace melon
