#include "melon/trace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "melon/errors.hpp"

namespace melon {

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        correction_ += (sum_ - t) + x;
    } else {
        correction_ += (x - t) + sum_;
    }
    sum_ = t;
}

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::size_t ipow(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= base;
    return r;
}

// Dense tensor with every leg of dimension N, row-major over `legs`.
struct Node {
    std::vector<std::uint32_t> legs;
    std::vector<double> data;
};

Node permute(const Node& in, const std::vector<std::size_t>& order, std::size_t N) {
    const std::size_t rank = in.legs.size();
    Node out;
    out.legs.resize(rank);
    for (std::size_t k = 0; k < rank; ++k) out.legs[k] = in.legs[order[k]];
    bool identity = true;
    for (std::size_t k = 0; k < rank; ++k) identity = identity && order[k] == k;
    if (identity) {
        out.data = in.data;
        return out;
    }
    // Stride in the input of each output position.
    std::vector<std::size_t> in_stride(rank), stride(rank);
    for (std::size_t k = rank, s = 1; k-- > 0; s *= N) in_stride[k] = s;
    for (std::size_t k = 0; k < rank; ++k) stride[k] = in_stride[order[k]];
    out.data.resize(in.data.size());
    std::vector<std::size_t> idx(rank, 0);
    std::size_t src = 0;
    for (std::size_t flat = 0; flat < out.data.size(); ++flat) {
        out.data[flat] = in.data[src];
        for (std::size_t k = rank; k-- > 0;) {
            src += stride[k];
            if (++idx[k] < N) break;
            src -= stride[k] * N;
            idx[k] = 0;
        }
    }
    return out;
}

// Sums over the diagonal of the two legs at positions i < j.
Node trace_legs(const Node& in, std::size_t i, std::size_t j, std::size_t N) {
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < in.legs.size(); ++k)
        if (k != i && k != j) order.push_back(k);
    order.push_back(i);
    order.push_back(j);
    const Node moved = permute(in, order, N);
    Node out;
    out.legs.assign(moved.legs.begin(), moved.legs.end() - 2);
    const std::size_t outer = moved.data.size() / (N * N);
    out.data.assign(outer, 0.0);
    for (std::size_t r = 0; r < outer; ++r) {
        CompensatedSum s;
        for (std::size_t k = 0; k < N; ++k) s.add(moved.data[r * N * N + k * N + k]);
        out.data[r] = s.value();
    }
    return out;
}

Node trace_self_loops(Node node, std::size_t N) {
    while (true) {
        bool found = false;
        for (std::size_t i = 0; i < node.legs.size() && !found; ++i)
            for (std::size_t j = i + 1; j < node.legs.size() && !found; ++j)
                if (node.legs[i] == node.legs[j]) {
                    node = trace_legs(node, i, j, N);
                    found = true;
                }
        if (!found) return node;
    }
}

struct PairPlan {
    std::vector<std::size_t> a_free, a_shared, b_shared, b_free;
};

PairPlan plan_pair(const Node& a, const Node& b) {
    PairPlan plan;
    for (std::size_t i = 0; i < a.legs.size(); ++i) {
        auto it = std::find(b.legs.begin(), b.legs.end(), a.legs[i]);
        if (it == b.legs.end()) {
            plan.a_free.push_back(i);
        } else {
            plan.a_shared.push_back(i);
            plan.b_shared.push_back(static_cast<std::size_t>(it - b.legs.begin()));
        }
    }
    for (std::size_t j = 0; j < b.legs.size(); ++j) {
        if (std::find(plan.b_shared.begin(), plan.b_shared.end(), j) == plan.b_shared.end()) {
            plan.b_free.push_back(j);
        }
    }
    return plan;
}

Node contract_pair(const Node& a, const Node& b, std::size_t N) {
    const PairPlan plan = plan_pair(a, b);
    std::vector<std::size_t> a_order = plan.a_free;
    a_order.insert(a_order.end(), plan.a_shared.begin(), plan.a_shared.end());
    std::vector<std::size_t> b_order = plan.b_shared;
    b_order.insert(b_order.end(), plan.b_free.begin(), plan.b_free.end());
    const Node pa = permute(a, a_order, N);
    const Node pb = permute(b, b_order, N);

    Node out;
    out.legs.assign(pa.legs.begin(), pa.legs.begin() + static_cast<std::ptrdiff_t>(plan.a_free.size()));
    out.legs.insert(out.legs.end(), pb.legs.begin() + static_cast<std::ptrdiff_t>(plan.b_shared.size()),
                    pb.legs.end());
    const auto rows = static_cast<Eigen::Index>(ipow(N, plan.a_free.size()));
    const auto inner = static_cast<Eigen::Index>(ipow(N, plan.a_shared.size()));
    const auto cols = static_cast<Eigen::Index>(ipow(N, plan.b_free.size()));
    if (rows == 1 && cols == 1) {
        // Final scalar reduction.
        CompensatedSum s;
        for (Eigen::Index k = 0; k < inner; ++k) s.add(pa.data[k] * pb.data[k]);
        out.data = {s.value()};
        return out;
    }
    out.data.resize(static_cast<std::size_t>(rows * cols));
    Eigen::Map<const RowMatrix> am(pa.data.data(), rows, inner);
    Eigen::Map<const RowMatrix> bm(pb.data.data(), inner, cols);
    Eigen::Map<RowMatrix> cm(out.data.data(), rows, cols);
    cm.noalias() = am * bm;
    return out;
}

}  // namespace

TraceEvaluator::TraceEvaluator(const SymTensor& t) : tensor_(t), dense_(t.dense()) {}

double TraceEvaluator::trace(const CombinatorialMap& b) const {
    if (b.p() != tensor_.order()) throw ContractViolation("map valence differs from tensor order");
    const std::size_t N = tensor_.dimension();
    std::vector<Node> nodes;
    nodes.reserve(b.vertex_count());
    for (const Cycle& vertex : b.vertices()) {
        Node node;
        for (Halfedge h : vertex) node.legs.push_back(b.edge_of(h));
        node.data = dense_;
        nodes.push_back(trace_self_loops(std::move(node), N));
    }

    while (nodes.size() > 1) {
        std::size_t best_i = 0, best_j = 0;
        std::size_t best_size = 0, best_cost = 0;
        bool have = false;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                const PairPlan plan = plan_pair(nodes[i], nodes[j]);
                if (plan.a_shared.empty()) continue;
                const std::size_t size = plan.a_free.size() + plan.b_free.size();
                const std::size_t cost = size + plan.a_shared.size();
                if (!have || size < best_size || (size == best_size && cost < best_cost)) {
                    have = true;
                    best_i = i;
                    best_j = j;
                    best_size = size;
                    best_cost = cost;
                }
            }
        if (!have) break;
        Node merged = contract_pair(nodes[best_i], nodes[best_j], N);
        nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(best_j));
        nodes[best_i] = trace_self_loops(std::move(merged), N);
    }
    // Connected components each end as a scalar.
    double value = 1.0;
    for (const Node& node : nodes) {
        if (!node.legs.empty()) throw ContractViolation("tensor network left dangling legs");
        value *= node.data[0];
    }
    return value;
}

double trace_invariant(const CombinatorialMap& b, const SymTensor& t) { return TraceEvaluator(t).trace(b); }

double trace_invariant_naive(const CombinatorialMap& b, const SymTensor& t) {
    if (b.p() != t.order()) throw ContractViolation("map valence differs from tensor order");
    const std::size_t N = t.dimension();
    const std::size_t edges = b.edge_count();
    std::vector<std::uint32_t> label(edges, 0);
    MultiIndex idx(b.p());
    CompensatedSum total;
    while (true) {
        double term = 1.0;
        for (const Cycle& vertex : b.vertices()) {
            for (std::size_t k = 0; k < vertex.size(); ++k) idx[k] = label[b.edge_of(vertex[k])];
            term *= t(idx);
        }
        total.add(term);
        std::size_t e = 0;
        while (e < edges && ++label[e] == N) label[e++] = 0;
        if (e == edges) break;
    }
    return total.value();
}

double injective_trace(const CombinatorialMap& b, const EdgePartition& pi, const SymTensor& t) {
    if (b.p() != t.order()) throw ContractViolation("map valence differs from tensor order");
    if (pi.edge_count() != b.edge_count()) throw InvalidPartition("partition does not cover the edge set");
    const std::size_t N = t.dimension();
    const std::size_t blocks = pi.block_count();
    if (blocks > N) return 0.0;
    std::vector<std::uint32_t> label(blocks, 0);
    MultiIndex idx(b.p());
    CompensatedSum total;
    while (true) {
        bool distinct = true;
        for (std::size_t i = 0; i < blocks && distinct; ++i)
            for (std::size_t j = i + 1; j < blocks && distinct; ++j) distinct = label[i] != label[j];
        if (distinct) {
            double term = 1.0;
            for (const Cycle& vertex : b.vertices()) {
                for (std::size_t k = 0; k < vertex.size(); ++k) {
                    idx[k] = label[pi.block_of(b.edge_of(vertex[k]))];
                }
                term *= t(idx);
            }
            total.add(term);
        }
        std::size_t i = 0;
        while (i < blocks && ++label[i] == N) label[i++] = 0;
        if (i == blocks) break;
    }
    return total.value();
}

namespace {

// Smallest adjacency listing of G(b) over all vertex orderings.
std::vector<std::uint32_t> multigraph_form(const CombinatorialMap& b) {
    const std::size_t n = b.vertex_count();
    std::vector<std::uint32_t> adj(n * n, 0);
    for (const auto& [h1, h2] : b.edges()) {
        const std::uint32_t u = b.vertex_of(h1), w = b.vertex_of(h2);
        ++adj[u * n + w];
        if (u != w) ++adj[w * n + u];
    }
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::vector<std::uint32_t> best, current(n * n);
    do {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) current[i * n + j] = adj[order[i] * n + order[j]];
        if (best.empty() || current < best) best = current;
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

}  // namespace

const std::vector<MapClass>& balanced_classes(unsigned p, unsigned n) {
    static std::mutex mutex;
    static std::map<std::pair<unsigned, unsigned>, std::vector<MapClass>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({p, n});
    if (it != cache.end()) return it->second;

    std::vector<MapClass> classes;
    if (p == 2 && n >= 1) {
        classes.push_back({cycle_map(n), 1});
    } else if (n >= 1) {
        std::map<std::vector<std::uint32_t>, std::size_t> index;
        for (CombinatorialMap& b : enumerate_rooted_connected(p, n)) {
            auto [pos, inserted] = index.try_emplace(multigraph_form(b), classes.size());
            if (inserted) {
                classes.push_back({std::move(b), 1});
            } else {
                ++classes[pos->second].count;
            }
        }
    }
    return cache.emplace(std::make_pair(p, n), std::move(classes)).first->second;
}

double balanced_invariant(unsigned n, const TraceEvaluator& eval) {
    const SymTensor& t = eval.tensor();
    if (n == 0) return static_cast<double>(t.dimension());
    if ((static_cast<std::size_t>(t.order()) * n) % 2 != 0) return 0.0;
    CompensatedSum total;
    for (const MapClass& c : balanced_classes(t.order(), n)) {
        total.add(static_cast<double>(c.count) * eval.trace(c.representative));
    }
    return total.value();
}

double balanced_invariant(unsigned n, const SymTensor& t) { return balanced_invariant(n, TraceEvaluator(t)); }

std::complex<double> resolvent_series(const SymTensor& t, std::complex<double> z, unsigned K) {
    if (z == std::complex<double>(0.0, 0.0)) throw ContractViolation("resolvent series needs z != 0");
    const TraceEvaluator eval(t);
    const double N = static_cast<double>(t.dimension());
    std::complex<double> total = 0.0;
    std::complex<double> z_power = z;
    for (unsigned n = 0; n <= K; ++n) {
        total += balanced_invariant(n, eval) / (N * z_power);
        z_power *= z;
    }
    return total;
}

}  // namespace melon
