#include "melon/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "melon/errors.hpp"

namespace melon {

namespace {

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

std::vector<std::pair<std::uint32_t, std::uint32_t>> as_incidences(std::vector<std::uint32_t> vs) {
    std::sort(vs.begin(), vs.end());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t v : vs) {
        if (!out.empty() && out.back().first == v) {
            ++out.back().second;
        } else {
            out.emplace_back(v, 1);
        }
    }
    return out;
}

}  // namespace

std::size_t Hyperedge::order() const {
    std::size_t total = 0;
    for (const auto& [v, l] : vertices) total += l;
    return total;
}

Hypergraph::Hypergraph(std::size_t num_vertices, std::vector<Hyperedge> hyperedges)
    : num_vertices_(num_vertices), hyperedges_(std::move(hyperedges)) {
    for (auto& e : hyperedges_) {
        if (e.vertices.empty()) throw ContractViolation("hyperedge is empty");
        if (e.multiplicity == 0) throw ContractViolation("hyperedge multiplicity must be positive");
        std::sort(e.vertices.begin(), e.vertices.end());
        for (std::size_t i = 0; i < e.vertices.size(); ++i) {
            const auto& [v, l] = e.vertices[i];
            if (v >= num_vertices_) throw ContractViolation("hyperedge vertex out of range");
            if (l == 0) throw ContractViolation("vertex incidence must be positive");
            if (i > 0 && e.vertices[i - 1].first == v) {
                throw ContractViolation("vertex listed twice in a hyperedge");
            }
        }
    }
    for (std::size_t i = 0; i < hyperedges_.size(); ++i) {
        for (std::size_t j = i + 1; j < hyperedges_.size(); ++j) {
            if (hyperedges_[i].vertices == hyperedges_[j].vertices) {
                throw ContractViolation("equal hyperedges must be merged into one multiplicity");
            }
        }
    }
}

Hypergraph Hypergraph::from_multisets(std::size_t num_vertices,
                                      const std::vector<std::vector<std::uint32_t>>& multisets) {
    std::vector<Hyperedge> edges;
    std::map<std::vector<std::pair<std::uint32_t, std::uint32_t>>, std::size_t> index;
    for (const auto& ms : multisets) {
        auto inc = as_incidences(ms);
        auto [it, inserted] = index.try_emplace(inc, edges.size());
        if (inserted) {
            edges.push_back(Hyperedge{std::move(inc), 1});
        } else {
            ++edges[it->second].multiplicity;
        }
    }
    return Hypergraph(num_vertices, std::move(edges));
}

std::size_t Hypergraph::degree(std::uint32_t v) const {
    std::size_t d = 0;
    for (const auto& e : hyperedges_) {
        for (const auto& [u, l] : e.vertices) {
            if (u == v) d += static_cast<std::size_t>(e.multiplicity) * l;
        }
    }
    return d;
}

Hypergraph Hypergraph::reduced() const {
    Hypergraph out = *this;
    for (auto& e : out.hyperedges_) e.multiplicity = 1;
    return out;
}

bool Hypergraph::is_uniform(std::size_t p) const {
    return std::all_of(hyperedges_.begin(), hyperedges_.end(),
                       [p](const Hyperedge& e) { return e.order() == p; });
}

Hypergraph hypergraph_of(const Hypermap& b) {
    const auto vertex = cycle_index(b.sigma);
    std::vector<std::vector<std::uint32_t>> multisets;
    for (const Cycle& c : cycles(b.tau)) {
        std::vector<std::uint32_t> ms;
        ms.reserve(c.size());
        for (Halfedge h : c) ms.push_back(vertex[h]);
        multisets.push_back(std::move(ms));
    }
    const std::size_t nv = b.size() == 0 ? 0 : cycles(b.sigma).size();
    return Hypergraph::from_multisets(nv, multisets);
}

bool has_cycle(const Hypergraph& h) {
    const auto nv = static_cast<std::uint32_t>(h.num_vertices());
    DisjointSets sets(nv + h.hyperedges().size());
    for (std::uint32_t i = 0; i < h.hyperedges().size(); ++i) {
        for (const auto& [v, l] : h.hyperedges()[i].vertices) {
            if (l >= 2) return true;
            if (!sets.unite(v, nv + i)) return true;
        }
    }
    return false;
}

bool is_connected(const Hypergraph& h) {
    if (h.num_vertices() <= 1) return true;
    DisjointSets sets(h.num_vertices());
    std::size_t components = h.num_vertices();
    for (const auto& e : h.hyperedges()) {
        for (const auto& [v, l] : e.vertices) {
            if (sets.unite(e.vertices.front().first, v)) --components;
        }
    }
    return components == 1;
}

bool is_hypertree(const Hypergraph& h) { return is_connected(h) && !has_cycle(h); }

bool is_double_hypertree(const Hypergraph& h) {
    return std::all_of(h.hyperedges().begin(), h.hyperedges().end(),
                       [](const Hyperedge& e) { return e.multiplicity == 2; }) &&
           is_hypertree(h);
}

long euler_deficiency(const Hypergraph& h, unsigned p) {
    if (!is_connected(h)) throw ContractViolation("euler_deficiency needs a connected hypergraph");
    if (!h.is_uniform(p)) throw ContractViolation("euler_deficiency needs a p-uniform hypergraph");
    return 1 - static_cast<long>(h.num_vertices()) +
           static_cast<long>(p - 1) * static_cast<long>(h.hyperedges().size());
}

std::optional<EdgePartition> is_melonic_dual(const CombinatorialMap& b) {
    const unsigned p = b.p();
    if (p < 2) throw ContractViolation("melonic classification needs p >= 2");
    if (p == 2) throw Unsupported("the melonic partition is not unique for p = 2");
    if (!is_connected(b)) throw ContractViolation("melonic classification needs a connected map");

    // Dual view: H-vertices are the edges of b (merged into blocks by the
    // union-find), H-hyperedges are the vertices of b as lists of edge slots.
    const std::size_t nv = b.vertex_count();
    std::vector<std::vector<std::uint32_t>> slots(nv);
    for (std::uint32_t v = 0; v < nv; ++v) {
        for (Halfedge h : b.vertices()[v]) slots[v].push_back(b.edge_of(h));
    }
    DisjointSets blocks(b.edge_count());
    std::vector<bool> alive(nv, true);
    std::size_t alive_count = nv;

    while (true) {
        // Alive occurrences of every block, one entry per slot.
        std::map<std::uint32_t, std::vector<std::uint32_t>> occurrences;
        for (std::uint32_t v = 0; v < nv; ++v) {
            if (!alive[v]) continue;
            for (std::uint32_t e : slots[v]) occurrences[blocks.find(e)].push_back(v);
        }
        // A leaf block sits once in each of two distinct hyperedges and nowhere else.
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> leaves;
        for (const auto& [block, occ] : occurrences) {
            if (occ.size() == 2 && occ[0] != occ[1]) {
                leaves[{std::min(occ[0], occ[1]), std::max(occ[0], occ[1])}].push_back(block);
            }
        }
        auto found = std::find_if(leaves.begin(), leaves.end(),
                                  [p](const auto& kv) { return kv.second.size() + 1 >= p; });
        if (found == leaves.end()) return std::nullopt;
        const auto [u, w] = found->first;
        const auto& leaf_blocks = found->second;
        if (leaf_blocks.size() == p) {
            if (alive_count != 2) return std::nullopt;
            break;
        }
        auto attaching = [&](std::uint32_t v) {
            for (std::uint32_t e : slots[v]) {
                const std::uint32_t blk = blocks.find(e);
                if (std::find(leaf_blocks.begin(), leaf_blocks.end(), blk) == leaf_blocks.end()) return e;
            }
            throw ContractViolation("leaf pair without attaching slot");
        };
        blocks.unite(attaching(u), attaching(w));
        alive[u] = alive[w] = false;
        alive_count -= 2;
    }

    std::vector<std::uint32_t> labels(b.edge_count());
    for (std::uint32_t e = 0; e < labels.size(); ++e) labels[e] = blocks.find(e);
    EdgePartition pi = EdgePartition::from_labels(labels);
    if (!is_double_hypertree(hypergraph_of(dual(merge_edges(b, pi))))) return std::nullopt;
    return pi;
}

bool is_melonic_recursive(const CombinatorialMap& b) {
    const unsigned p = b.p();
    if (p < 3) throw ContractViolation("melon removal needs p >= 3");

    struct Edge {
        std::uint32_t a;
        std::uint32_t b;
        bool alive;
    };
    std::vector<Edge> edges;
    for (const auto& [h1, h2] : b.edges()) edges.push_back({b.vertex_of(h1), b.vertex_of(h2), true});
    std::vector<bool> vertex_alive(b.vertex_count(), true);
    std::size_t vertices_left = b.vertex_count();

    while (true) {
        bool spliced = false;
        for (std::uint32_t u = 0; u < vertex_alive.size() && !spliced; ++u) {
            if (!vertex_alive[u]) continue;
            for (std::uint32_t w = u + 1; w < vertex_alive.size() && !spliced; ++w) {
                if (!vertex_alive[w]) continue;
                std::vector<std::size_t> parallel;
                for (std::size_t i = 0; i < edges.size(); ++i) {
                    const Edge& e = edges[i];
                    if (e.alive && ((e.a == u && e.b == w) || (e.a == w && e.b == u))) parallel.push_back(i);
                }
                if (parallel.size() + 1 < p) continue;
                if (parallel.size() >= p) return vertices_left == 2 && parallel.size() == p;
                // Exactly p-1 parallel edges: each endpoint has one external edge.
                auto external = [&](std::uint32_t v, std::uint32_t other) -> std::pair<std::size_t, std::uint32_t> {
                    for (std::size_t i = 0; i < edges.size(); ++i) {
                        const Edge& e = edges[i];
                        if (!e.alive) continue;
                        if (e.a == v && e.b != other) return {i, e.b};
                        if (e.b == v && e.a != other) return {i, e.a};
                    }
                    throw ContractViolation("vertex without external edge");
                };
                const auto [iu, x] = external(u, w);
                const auto [iw, y] = external(w, u);
                for (std::size_t i : parallel) edges[i].alive = false;
                edges[iu].alive = false;
                edges[iw].alive = false;
                edges.push_back({x, y, true});
                vertex_alive[u] = vertex_alive[w] = false;
                vertices_left -= 2;
                spliced = true;
            }
        }
        if (!spliced) return false;
    }
}

}  // namespace melon
