#include "melon/counting.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "melon/errors.hpp"

namespace melon {

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt fuss_catalan(unsigned p, unsigned k) {
    if (p < 2) throw ContractViolation("fuss_catalan needs p >= 2");
    const unsigned m = p * k + 1;
    BigInt c = binomial(m, k);
    if (c % m != 0) throw NumericalError("Fuss-Catalan closed form is not integral");
    return c / m;
}

BigInt fuss_catalan_alt(unsigned p, unsigned k) {
    if (p < 2) throw ContractViolation("fuss_catalan needs p >= 2");
    const unsigned m = (p - 1) * k + 1;
    BigInt c = binomial(p * k, k);
    if (c % m != 0) throw NumericalError("Fuss-Catalan closed form is not integral");
    return c / m;
}

BigInt count_dyck(unsigned p, unsigned n) {
    if (p < 2) throw ContractViolation("count_dyck needs p >= 2");
    const std::size_t length = static_cast<std::size_t>(p) * n;
    const std::size_t down = p - 1;
    std::vector<BigInt> ways(length + 1, 0);
    ways[0] = 1;
    for (std::size_t step = 0; step < length; ++step) {
        std::vector<BigInt> next(length + 1, 0);
        for (std::size_t h = 0; h <= length; ++h) {
            if (ways[h] == 0) continue;
            if (h + 1 <= length) next[h + 1] += ways[h];
            if (h >= down) next[h - down] += ways[h];
        }
        ways = std::move(next);
    }
    return ways[0];
}

bool is_dyck_path(const DyckPath& d) {
    if (d.p < 2) return false;
    const int down = -static_cast<int>(d.p - 1);
    long height = 0;
    for (int s : d.steps) {
        if (s != 1 && s != down) return false;
        height += s;
        if (height < 0) return false;
    }
    return height == 0;
}

std::vector<DyckPath> all_dyck_paths(unsigned p, unsigned n) {
    if (p < 2) throw ContractViolation("Dyck paths need p >= 2");
    const std::size_t length = static_cast<std::size_t>(p) * n;
    const int down = -static_cast<int>(p - 1);
    std::vector<DyckPath> out;
    DyckPath current{p, {}};
    std::function<void(long)> extend = [&](long height) {
        const std::size_t remaining = length - current.steps.size();
        if (remaining == 0) {
            if (height == 0) out.push_back(current);
            return;
        }
        // Every remaining down step removes p-1; stop when the height cannot be cleared.
        if (static_cast<std::size_t>(height) > remaining * (p - 1)) return;
        current.steps.push_back(1);
        extend(height + 1);
        current.steps.pop_back();
        if (height + down >= 0) {
            current.steps.push_back(down);
            extend(height + down);
            current.steps.pop_back();
        }
    };
    extend(0);
    return out;
}

namespace {

std::size_t node_size(const HypertreeNode& node) {
    std::size_t total = 0;
    for (const auto& e : node.hyperedges) {
        ++total;
        for (const auto& child : e) total += node_size(child);
    }
    return total;
}

void encode(const HypertreeNode& node, unsigned p, std::vector<int>& steps) {
    for (const auto& e : node.hyperedges) {
        if (e.size() != p - 1) throw ContractViolation("hyperedge must have p-1 child vertices");
        for (const auto& child : e) {
            steps.push_back(1);
            encode(child, p, steps);
        }
        steps.push_back(-static_cast<int>(p - 1));
    }
}

}  // namespace

std::size_t PlaneHypertree::size() const { return node_size(root); }

DyckPath dyck_from_hypertree(const PlaneHypertree& h) {
    DyckPath d{h.p, {}};
    encode(h.root, h.p, d.steps);
    return d;
}

PlaneHypertree hypertree_from_dyck(const DyckPath& d) {
    if (!is_dyck_path(d)) throw InvalidPath("not a (p-1)-Dyck path");
    const unsigned p = d.p;
    const std::size_t length = d.steps.size();
    std::vector<long> height(length + 1, 0);
    for (std::size_t i = 0; i < length; ++i) height[i + 1] = height[i] + d.steps[i];

    // An up step at position i from a vertex at height h opens a hyperedge of
    // that vertex iff the path comes back to exactly h before going below it.
    auto returns_to = [&](std::size_t i, long h) {
        for (std::size_t j = i + 1; j <= length; ++j) {
            if (height[j] <= h) return height[j] == h;
        }
        return false;
    };

    std::size_t pos = 0;
    std::function<HypertreeNode(long)> parse = [&](long h) {
        HypertreeNode node;
        while (pos < length && d.steps[pos] == 1 && returns_to(pos, h)) {
            std::vector<HypertreeNode> children;
            for (unsigned j = 1; j < p; ++j) {
                if (pos >= length || d.steps[pos] != 1) throw InvalidPath("hyperedge opened with too few vertices");
                ++pos;
                children.push_back(parse(h + j));
            }
            if (pos >= length || d.steps[pos] != -static_cast<int>(p - 1)) {
                throw InvalidPath("hyperedge not closed by a down step");
            }
            ++pos;
            node.hyperedges.push_back(std::move(children));
        }
        return node;
    };
    PlaneHypertree out{p, parse(0)};
    if (pos != length) throw InvalidPath("path has steps outside the hypertree");
    return out;
}

std::vector<PlaneHypertree> all_plane_hypertrees(unsigned p, unsigned n) {
    if (p < 2) throw ContractViolation("hypertrees need p >= 2");
    std::map<unsigned, std::vector<HypertreeNode>> nodes;
    // Ordered sequences of `count` subtrees with `size` hyperedges in total.
    std::function<std::vector<std::vector<HypertreeNode>>(unsigned, unsigned)> sequences;
    std::function<const std::vector<HypertreeNode>&(unsigned)> nodes_of = [&](unsigned size)
        -> const std::vector<HypertreeNode>& {
        if (auto it = nodes.find(size); it != nodes.end()) return it->second;
        std::vector<HypertreeNode> out;
        if (size == 0) {
            out.push_back(HypertreeNode{});
        } else {
            // First hyperedge with k hyperedges below it, then the rest of the node.
            for (unsigned below = 0; below + 1 <= size; ++below) {
                const auto firsts = sequences(p - 1, below);
                const auto rests = nodes_of(size - 1 - below);
                for (const auto& first : firsts) {
                    for (const auto& rest : rests) {
                        HypertreeNode node;
                        node.hyperedges.push_back(first);
                        node.hyperedges.insert(node.hyperedges.end(), rest.hyperedges.begin(),
                                               rest.hyperedges.end());
                        out.push_back(std::move(node));
                    }
                }
            }
        }
        return nodes.emplace(size, std::move(out)).first->second;
    };
    sequences = [&](unsigned count, unsigned size) {
        std::vector<std::vector<HypertreeNode>> out;
        if (count == 0) {
            if (size == 0) out.emplace_back();
            return out;
        }
        for (unsigned head = 0; head <= size; ++head) {
            const auto heads = nodes_of(head);
            const auto tails = sequences(count - 1, size - head);
            for (const auto& h : heads) {
                for (const auto& t : tails) {
                    std::vector<HypertreeNode> seq{h};
                    seq.insert(seq.end(), t.begin(), t.end());
                    out.push_back(std::move(seq));
                }
            }
        }
        return out;
    };
    std::vector<PlaneHypertree> out;
    for (const auto& node : nodes_of(n)) out.push_back(PlaneHypertree{p, node});
    return out;
}

BigInt count_melonic_maps(unsigned p, unsigned n) {
    if (p < 3) throw ContractViolation("count_melonic_maps needs p >= 3");
    return fuss_catalan(p, n) * boost::multiprecision::pow(factorial(p - 1), n);
}

std::vector<SetPartition> noncrossing_partitions(unsigned m, unsigned d) {
    if (d == 0) throw ContractViolation("block size divisor must be positive");
    // Partitions of the segment [lo, hi), memoized.
    std::map<std::pair<unsigned, unsigned>, std::vector<SetPartition>> memo;
    std::function<std::vector<SetPartition>(unsigned, unsigned)> segment = [&](unsigned lo, unsigned hi) {
        if (auto it = memo.find({lo, hi}); it != memo.end()) return it->second;
        std::vector<SetPartition> out;
        if (lo == hi) {
            out.emplace_back();
            return out;
        }
        // The block of `lo`; every gap between its elements and the tail after
        // its last element is partitioned independently.
        std::vector<unsigned> block{lo};
        std::function<void(const std::vector<SetPartition>&)> grow = [&](const std::vector<SetPartition>& inner) {
            if (block.size() % d == 0) {
                for (const auto& rest : segment(block.back() + 1, hi)) {
                    for (const auto& in : inner) {
                        SetPartition part{block};
                        part.insert(part.end(), in.begin(), in.end());
                        part.insert(part.end(), rest.begin(), rest.end());
                        std::sort(part.begin(), part.end());
                        out.push_back(std::move(part));
                    }
                }
            }
            for (unsigned next = block.back() + 1; next < hi; ++next) {
                const auto gaps = segment(block.back() + 1, next);
                if (gaps.empty()) continue;
                std::vector<SetPartition> combined;
                for (const auto& in : inner) {
                    for (const auto& g : gaps) {
                        SetPartition c = in;
                        c.insert(c.end(), g.begin(), g.end());
                        combined.push_back(std::move(c));
                    }
                }
                block.push_back(next);
                grow(combined);
                block.pop_back();
            }
        };
        grow({SetPartition{}});
        memo.emplace(std::make_pair(lo, hi), out);
        return out;
    };
    return segment(0, m);
}

bool is_noncrossing(const SetPartition& partition) {
    std::map<unsigned, std::size_t> block_of;
    for (std::size_t i = 0; i < partition.size(); ++i) {
        for (unsigned x : partition[i]) block_of[x] = i;
    }
    std::vector<std::pair<unsigned, std::size_t>> points(block_of.begin(), block_of.end());
    const std::size_t m = points.size();
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            for (std::size_t c = b + 1; c < m; ++c)
                for (std::size_t e = c + 1; e < m; ++e) {
                    if (points[a].second == points[c].second && points[b].second == points[e].second &&
                        points[a].second != points[b].second) {
                        return false;
                    }
                }
    return true;
}

BigInt count_noncrossing_div(unsigned p, unsigned n) {
    if (p < 2) throw ContractViolation("count_noncrossing_div needs p >= 2");
    return noncrossing_partitions(n * (p - 1), p - 1).size();
}

bool generating_series_check(unsigned p, unsigned K) {
    if (K < 1) throw ContractViolation("truncation order must be positive");
    std::vector<BigInt> t(K + 1);
    for (unsigned k = 0; k <= K; ++k) t[k] = fuss_catalan(p, k);
    // power = T^j truncated at degree K.
    std::vector<BigInt> power(K + 1, 0);
    power[0] = 1;
    for (unsigned j = 0; j < p; ++j) {
        std::vector<BigInt> next(K + 1, 0);
        for (unsigned a = 0; a <= K; ++a)
            for (unsigned b = 0; a + b <= K; ++b) next[a + b] += power[a] * t[b];
        power = std::move(next);
    }
    for (unsigned k = 0; k <= K; ++k) {
        const BigInt rhs = (k == 0 ? BigInt(1) : BigInt(0)) + (k >= 1 ? power[k - 1] : BigInt(0));
        if (t[k] != rhs) return false;
    }
    return true;
}

}  // namespace melon
