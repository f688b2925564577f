#include "melon/expectation.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "melon/errors.hpp"

namespace melon {

namespace {

// Sorted multiplicity pattern of a multi-index; the entry variance depends only on it.
std::vector<std::uint32_t> pattern_of(std::vector<std::uint32_t> index) {
    std::sort(index.begin(), index.end());
    std::vector<std::uint32_t> pattern;
    for (std::size_t i = 0; i < index.size();) {
        std::size_t j = i;
        while (j < index.size() && index[j] == index[i]) ++j;
        pattern.push_back(static_cast<std::uint32_t>(j - i));
        i = j;
    }
    std::sort(pattern.begin(), pattern.end());
    return pattern;
}

// Any representative index with the given multiplicity pattern.
std::vector<std::uint32_t> index_with_pattern(const std::vector<std::uint32_t>& pattern) {
    std::vector<std::uint32_t> index;
    for (std::uint32_t a = 0; a < pattern.size(); ++a) index.insert(index.end(), pattern[a], a);
    return index;
}

using MomentKey = std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>>;

// Product of E[X^m] over (pattern, m) pairs, memoized per distribution call.
class MomentTable {
public:
    explicit MomentTable(const EntryDistribution& dist) : dist_(dist) {}

    Rational product(const MomentKey& key) {
        Rational r = 1;
        for (const auto& [pattern, m] : key) {
            auto it = cache_.find({pattern, m});
            if (it == cache_.end()) {
                const Rational var = dist_.entry_variance(index_with_pattern(pattern));
                it = cache_.emplace(std::make_pair(pattern, m), dist_.moment(m, var)).first;
            }
            r *= it->second;
            if (r == 0) break;
        }
        return r;
    }

private:
    const EntryDistribution& dist_;
    std::map<std::pair<std::vector<std::uint32_t>, std::uint32_t>, Rational> cache_;
};

// N^{-n(p-1)/2}; only called when n(p-1) is even.
Rational normalization(unsigned p, std::size_t n, std::size_t N) {
    const std::size_t e = n * (p - 1);
    if (e % 2 != 0) throw ContractViolation("normalization exponent is not an integer");
    return Rational(1, boost::multiprecision::pow(BigInt(N), static_cast<unsigned>(e / 2)));
}

void check_inputs(const CombinatorialMap& b, std::size_t N, const EntryDistribution& dist) {
    if (N == 0) throw ContractViolation("dimension must be positive");
    if (!dist.has_moment_oracle()) throw Unsupported("exact expectations need finite closed-form moments");
    (void)b;
}

}  // namespace

Rational exact_expected_trace_oracle(const CombinatorialMap& b, std::size_t N, const EntryDistribution& dist) {
    check_inputs(b, N, dist);
    const std::size_t edges = b.edge_count();
    std::size_t terms = 1;
    for (std::size_t e = 0; e < edges; ++e) {
        if (terms > kMaxOracleTerms / N) throw ResourceError("oracle exceeds the assignment guard");
        terms *= N;
    }
    const std::size_t n = b.vertex_count();
    const unsigned p = b.p();
    if ((n * (p - 1)) % 2 != 0) return 0;

    std::vector<std::uint32_t> label(edges, 0);
    std::vector<std::vector<std::uint32_t>> entries(n, std::vector<std::uint32_t>(p));
    std::map<MomentKey, std::size_t> histogram;
    while (true) {
        for (std::size_t v = 0; v < n; ++v) {
            const Cycle& vertex = b.vertices()[v];
            for (std::size_t k = 0; k < p; ++k) entries[v][k] = label[b.edge_of(vertex[k])];
            std::sort(entries[v].begin(), entries[v].end());
        }
        // Group identical entries; an odd power of a centered entry averages to zero.
        std::vector<std::vector<std::uint32_t>> sorted = entries;
        std::sort(sorted.begin(), sorted.end());
        MomentKey key;
        bool vanishes = false;
        for (std::size_t i = 0; i < sorted.size();) {
            std::size_t j = i;
            while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
            const auto m = static_cast<std::uint32_t>(j - i);
            if (m % 2 == 1) {
                vanishes = true;
                break;
            }
            key.emplace_back(pattern_of(sorted[i]), m);
            i = j;
        }
        if (!vanishes) {
            std::sort(key.begin(), key.end());
            ++histogram[key];
        }
        std::size_t e = 0;
        while (e < edges && ++label[e] == N) label[e++] = 0;
        if (e == edges) break;
    }

    MomentTable moments(dist);
    Rational total = 0;
    for (const auto& [key, count] : histogram) total += moments.product(key) * Rational(count);
    return total * normalization(p, n, N);
}

Rational expected_trace_partition(const CombinatorialMap& b, std::size_t N, const EntryDistribution& dist) {
    check_inputs(b, N, dist);
    const std::size_t edges = b.edge_count();
    if (edges > kMaxPartitionEdges) throw ResourceError("partition route exceeds the edge guard");
    const std::size_t n = b.vertex_count();
    const unsigned p = b.p();
    if ((n * (p - 1)) % 2 != 0) return 0;

    MomentTable moments(dist);
    Rational total = 0;
    for (const EdgePartition& pi : enumerate_edge_partitions(edges)) {
        const std::size_t blocks = pi.block_count();
        if (blocks > N) continue;
        // Hyperedges of H(dual(b_pi)): the vertices of b as multisets of blocks.
        std::vector<std::vector<std::uint32_t>> hyperedges(n);
        for (std::size_t v = 0; v < n; ++v) {
            for (Halfedge h : b.vertices()[v]) hyperedges[v].push_back(pi.block_of(b.edge_of(h)));
            std::sort(hyperedges[v].begin(), hyperedges[v].end());
        }
        std::sort(hyperedges.begin(), hyperedges.end());
        MomentKey key;
        bool vanishes = false;
        for (std::size_t i = 0; i < hyperedges.size();) {
            std::size_t j = i;
            while (j < hyperedges.size() && hyperedges[j] == hyperedges[i]) ++j;
            const auto m = static_cast<std::uint32_t>(j - i);
            if (m % 2 == 1) {
                vanishes = true;
                break;
            }
            key.emplace_back(pattern_of(hyperedges[i]), m);
            i = j;
        }
        if (vanishes) continue;
        BigInt falling = 1;
        for (std::size_t k = 0; k < blocks; ++k) falling *= N - k;
        total += Rational(falling) * moments.product(key);
    }
    return total * normalization(p, n, N);
}

Rational melonic_alpha(unsigned p, std::size_t vertex_count) {
    if (vertex_count % 2 != 0) throw ContractViolation("melonic maps have an even vertex count");
    return Rational(1, boost::multiprecision::pow(factorial(p - 1), static_cast<unsigned>(vertex_count / 2)));
}

}  // namespace melon
