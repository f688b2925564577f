#include "melon/maps.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "melon/errors.hpp"

namespace melon {

namespace {

// Smallest-index union-find; path halving is enough at these sizes.
struct DisjointSets {
    std::vector<std::uint32_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a < b) std::swap(a, b);
        parent[a] = b;
        return true;
    }
};

CanonicalCode code_of(unsigned p, std::size_t vertex_count, std::span<const Halfedge> sigma,
                      std::span<const Halfedge> tau, Halfedge root) {
    const std::size_t size = sigma.size();
    constexpr Halfedge kUnset = ~Halfedge{0};
    std::vector<Halfedge> label(size, kUnset);
    std::vector<Halfedge> order;
    order.reserve(size);
    label[root] = 0;
    order.push_back(root);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Halfedge h = order[i];
        for (Halfedge next : {sigma[h], tau[h]}) {
            if (label[next] == kUnset) {
                label[next] = static_cast<Halfedge>(order.size());
                order.push_back(next);
            }
        }
    }
    if (order.size() != size) {
        throw ContractViolation("canonical_code requires a connected map");
    }
    CanonicalCode out;
    out.code.reserve(2 + 2 * size);
    out.code.push_back(p);
    out.code.push_back(static_cast<std::uint32_t>(vertex_count));
    for (Halfedge h : order) {
        out.code.push_back(label[sigma[h]]);
        out.code.push_back(label[tau[h]]);
    }
    return out;
}

std::vector<Halfedge> standard_sigma(unsigned p, unsigned n) {
    std::vector<Halfedge> sigma(static_cast<std::size_t>(p) * n);
    for (unsigned v = 0; v < n; ++v) {
        for (unsigned j = 0; j < p; ++j) {
            sigma[v * p + j] = v * p + (j + 1) % p;
        }
    }
    return sigma;
}

}  // namespace

Hypermap::Hypermap(Permutation s, Permutation t, std::optional<Halfedge> r)
    : sigma(std::move(s)), tau(std::move(t)), root(r) {
    if (sigma.size() != tau.size()) {
        throw ContractViolation("sigma and tau act on different ground sets");
    }
    if (root && *root >= sigma.size()) {
        throw ContractViolation("root is not a halfedge");
    }
}

EdgePartition::EdgePartition(std::size_t edge_count, std::vector<std::vector<std::uint32_t>> blocks)
    : blocks_(std::move(blocks)), block_of_(edge_count, 0) {
    std::vector<bool> seen(edge_count, false);
    std::size_t covered = 0;
    for (auto& block : blocks_) {
        if (block.empty()) throw InvalidPartition("edge partition has an empty block");
        std::sort(block.begin(), block.end());
        for (std::uint32_t e : block) {
            if (e >= edge_count || seen[e]) {
                throw InvalidPartition("edge partition blocks overlap or leave the edge range");
            }
            seen[e] = true;
            ++covered;
        }
    }
    if (covered != edge_count) throw InvalidPartition("edge partition does not cover every edge");
    if (edge_count > 0 && blocks_.empty()) throw InvalidPartition("edge partition has no block");
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (std::uint32_t i = 0; i < blocks_.size(); ++i) {
        for (std::uint32_t e : blocks_[i]) block_of_[e] = i;
    }
}

EdgePartition EdgePartition::from_labels(std::span<const std::uint32_t> labels) {
    std::map<std::uint32_t, std::vector<std::uint32_t>> grouped;
    for (std::uint32_t i = 0; i < labels.size(); ++i) grouped[labels[i]].push_back(i);
    std::vector<std::vector<std::uint32_t>> blocks;
    blocks.reserve(grouped.size());
    for (auto& [label, block] : grouped) blocks.push_back(std::move(block));
    return EdgePartition(labels.size(), std::move(blocks));
}

EdgePartition EdgePartition::singletons(std::size_t edge_count) {
    std::vector<std::vector<std::uint32_t>> blocks(edge_count);
    for (std::uint32_t e = 0; e < edge_count; ++e) blocks[e] = {e};
    return EdgePartition(edge_count, std::move(blocks));
}

EdgePartition EdgePartition::single_block(std::size_t edge_count) {
    std::vector<std::uint32_t> all(edge_count);
    std::iota(all.begin(), all.end(), 0u);
    return EdgePartition(edge_count, {std::move(all)});
}

CombinatorialMap::CombinatorialMap(unsigned p, Permutation sigma, Permutation tau,
                                   std::optional<Halfedge> root)
    : p_(p), sigma_(std::move(sigma)), tau_(std::move(tau)), root_(root) {
    if (p_ == 0) throw ContractViolation("valence must be positive");
    if (sigma_.size() != tau_.size()) throw ContractViolation("sigma and tau act on different ground sets");
    if (sigma_.size() % 2 != 0) throw ContractViolation("a map needs an even number of halfedges");
    if (root_ && *root_ >= sigma_.size()) throw ContractViolation("root is not a halfedge");
    if (!tau_.is_involution() || tau_.has_fixed_point()) {
        throw ContractViolation("tau must be a fixed-point-free involution");
    }
    vertices_ = cycles(sigma_);
    for (const Cycle& c : vertices_) {
        if (c.size() != p_) throw ContractViolation("sigma has a cycle whose length differs from p");
    }
    vertex_of_.assign(sigma_.size(), 0);
    for (std::uint32_t v = 0; v < vertices_.size(); ++v) {
        for (Halfedge h : vertices_[v]) vertex_of_[h] = v;
    }
    edge_of_.assign(tau_.size(), 0);
    for (Halfedge h = 0; h < tau_.size(); ++h) {
        if (h < tau_(h)) {
            edge_of_[h] = edge_of_[tau_(h)] = static_cast<std::uint32_t>(edges_.size());
            edges_.emplace_back(h, tau_(h));
        }
    }
}

CombinatorialMap CombinatorialMap::with_standard_vertices(unsigned p, std::vector<Halfedge> tau_image,
                                                          std::optional<Halfedge> root) {
    if (p == 0 || tau_image.size() % p != 0) {
        throw ContractViolation("halfedge count must be a multiple of p");
    }
    const auto n = static_cast<unsigned>(tau_image.size() / p);
    return CombinatorialMap(p, Permutation(standard_sigma(p, n)), Permutation(std::move(tau_image)), root);
}

CombinatorialMap CombinatorialMap::relabelled(const Permutation& theta) const {
    std::optional<Halfedge> r;
    if (root_) r = theta(*root_);
    return CombinatorialMap(p_, sigma_.conjugated_by(theta), tau_.conjugated_by(theta), r);
}

Hypermap dual(const Hypermap& b) { return Hypermap(b.tau, b.sigma, b.root); }

Hypermap merge_edges(const CombinatorialMap& b, const EdgePartition& pi) {
    if (pi.edge_count() != b.edge_count()) {
        throw InvalidPartition("partition does not cover the edge set of the map");
    }
    std::vector<Cycle> merged;
    merged.reserve(pi.block_count());
    for (const auto& block : pi.blocks()) {
        // Edges are indexed by minimal halfedge, so sorted edge ids give the
        // member 2-cycles in order of their minimal halfedge.
        Cycle c;
        for (std::uint32_t e : block) {
            c.push_back(b.edges()[e].first);
            c.push_back(b.edges()[e].second);
        }
        merged.push_back(std::move(c));
    }
    return Hypermap(b.sigma(), Permutation::from_cycles(b.halfedge_count(), merged), b.root());
}

bool is_connected(const Hypermap& b) {
    if (b.size() == 0) return true;
    DisjointSets sets(b.size());
    std::size_t components = b.size();
    for (Halfedge h = 0; h < b.size(); ++h) {
        if (sets.unite(h, b.sigma(h))) --components;
        if (sets.unite(h, b.tau(h))) --components;
    }
    return components == 1;
}

bool is_connected(const CombinatorialMap& b) { return is_connected(b.as_hypermap()); }

CanonicalCode canonical_code(const CombinatorialMap& b) {
    if (!b.root()) throw ContractViolation("canonical_code requires a rooted map");
    return code_of(b.p(), b.vertex_count(), b.sigma().image(), b.tau().image(), *b.root());
}

std::vector<CombinatorialMap> enumerate_rooted_connected(unsigned p, unsigned n) {
    if (p < 2 || n < 1) throw ContractViolation("enumeration needs p >= 2 and n >= 1");
    const std::size_t size = static_cast<std::size_t>(p) * n;
    if (size % 2 != 0) return {};
    if (size > kMaxEnumeratedHalfedges) {
        throw ResourceError("map enumeration exceeds the halfedge guard");
    }

    const std::vector<Halfedge> sigma = standard_sigma(p, n);
    constexpr Halfedge kFree = ~Halfedge{0};
    std::vector<Halfedge> tau(size, kFree);
    std::map<CanonicalCode, std::vector<Halfedge>> classes;

    auto connected = [&]() {
        DisjointSets sets(n);
        unsigned components = n;
        for (Halfedge h = 0; h < size; ++h) {
            if (sets.unite(h / p, tau[h] / p)) --components;
        }
        return components == 1;
    };

    // Always pair the smallest free halfedge first.
    auto search = [&](auto&& self, Halfedge first_free) -> void {
        while (first_free < size && tau[first_free] != kFree) ++first_free;
        if (first_free == size) {
            if (!connected()) return;
            CanonicalCode code = code_of(p, n, sigma, tau, 0);
            classes.try_emplace(std::move(code), tau);
            return;
        }
        for (Halfedge partner = first_free + 1; partner < size; ++partner) {
            if (tau[partner] != kFree) continue;
            tau[first_free] = partner;
            tau[partner] = first_free;
            self(self, first_free + 1);
            tau[first_free] = kFree;
            tau[partner] = kFree;
        }
    };
    search(search, 0);

    std::vector<CombinatorialMap> out;
    out.reserve(classes.size());
    for (auto& [code, tau_image] : classes) {
        out.push_back(CombinatorialMap(p, Permutation(sigma), Permutation(tau_image), Halfedge{0}));
    }
    return out;
}

CombinatorialMap cycle_map(unsigned n) {
    if (n < 1) throw ContractViolation("a cycle needs at least one vertex");
    std::vector<Halfedge> tau(2 * n);
    // Vertex v owns halfedges 2v and 2v+1; 2v+1 is joined to the next vertex.
    for (unsigned v = 0; v < n; ++v) {
        const Halfedge out = 2 * v + 1;
        const Halfedge in = 2 * ((v + 1) % n);
        tau[out] = in;
        tau[in] = out;
    }
    return CombinatorialMap::with_standard_vertices(2, std::move(tau), Halfedge{0});
}

EdgePartitions::EdgePartitions(std::size_t m) : m_(m) {}

EdgePartitions::iterator::iterator(std::size_t m)
    : labels_(m, 0), prefix_max_(m, 0), current_(EdgePartition::from_labels(labels_)), done_(false) {}

EdgePartitions::iterator& EdgePartitions::iterator::operator++() {
    const std::size_t m = labels_.size();
    // Rightmost position that can still grow: labels_[i] <= max(labels_[0..i-1]).
    std::size_t i = m;
    while (i > 1) {
        --i;
        if (labels_[i] <= prefix_max_[i - 1]) {
            ++labels_[i];
            prefix_max_[i] = std::max(prefix_max_[i - 1], labels_[i]);
            for (std::size_t j = i + 1; j < m; ++j) {
                labels_[j] = 0;
                prefix_max_[j] = prefix_max_[i];
            }
            current_ = EdgePartition::from_labels(labels_);
            return *this;
        }
    }
    done_ = true;
    return *this;
}

}  // namespace melon
