#include "melon/permutation.hpp"

#include <numeric>

#include "melon/errors.hpp"

namespace melon {

Permutation::Permutation(std::vector<Halfedge> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (Halfedge h : image_) {
        if (h >= image_.size() || seen[h]) {
            throw ContractViolation("permutation image is not a bijection");
        }
        seen[h] = true;
    }
}

Permutation Permutation::identity(std::size_t size) {
    std::vector<Halfedge> image(size);
    std::iota(image.begin(), image.end(), Halfedge{0});
    return Permutation(std::move(image));
}

Permutation Permutation::from_cycles(std::size_t size, const std::vector<Cycle>& cycles) {
    std::vector<Halfedge> image(size);
    std::iota(image.begin(), image.end(), Halfedge{0});
    std::vector<bool> used(size, false);
    for (const Cycle& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] >= size || used[c[i]]) {
                throw ContractViolation("cycles are not disjoint or out of range");
            }
            used[c[i]] = true;
            image[c[i]] = c[(i + 1) % c.size()];
        }
    }
    return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
    std::vector<Halfedge> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) {
        inv[image_[i]] = static_cast<Halfedge>(i);
    }
    Permutation out;
    out.image_ = std::move(inv);
    return out;
}

bool Permutation::is_involution() const {
    for (std::size_t i = 0; i < image_.size(); ++i) {
        if (image_[image_[i]] != i) return false;
    }
    return true;
}

bool Permutation::has_fixed_point() const {
    for (std::size_t i = 0; i < image_.size(); ++i) {
        if (image_[i] == i) return true;
    }
    return false;
}

Permutation Permutation::conjugated_by(const Permutation& theta) const {
    if (theta.size() != size()) {
        throw ContractViolation("relabelling has the wrong ground set size");
    }
    // theta o this o theta^-1 maps theta(x) to theta(this(x)).
    std::vector<Halfedge> image(image_.size());
    for (std::size_t x = 0; x < image_.size(); ++x) {
        image[theta(static_cast<Halfedge>(x))] = theta(image_[x]);
    }
    Permutation out;
    out.image_ = std::move(image);
    return out;
}

std::vector<Cycle> cycles(const Permutation& perm) {
    std::vector<Cycle> out;
    std::vector<bool> seen(perm.size(), false);
    for (Halfedge start = 0; start < perm.size(); ++start) {
        if (seen[start]) continue;
        Cycle c;
        Halfedge h = start;
        do {
            seen[h] = true;
            c.push_back(h);
            h = perm(h);
        } while (h != start);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<std::uint32_t> cycle_index(const Permutation& perm) {
    std::vector<std::uint32_t> index(perm.size(), 0);
    std::uint32_t next = 0;
    std::vector<bool> seen(perm.size(), false);
    for (Halfedge start = 0; start < perm.size(); ++start) {
        if (seen[start]) continue;
        Halfedge h = start;
        do {
            seen[h] = true;
            index[h] = next;
            h = perm(h);
        } while (h != start);
        ++next;
    }
    return index;
}

}  // namespace melon
