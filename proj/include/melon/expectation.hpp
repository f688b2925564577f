#pragma once

#include <cstddef>

#include "melon/distributions.hpp"
#include "melon/exact.hpp"
#include "melon/maps.hpp"

namespace melon {

/// Guard on the number of index assignments visited by the brute-force oracle.
inline constexpr std::size_t kMaxOracleTerms = 100'000'000;
/// Guard on the edge count of the partition route (Bell(9) partitions).
inline constexpr std::size_t kMaxPartitionEdges = 9;

/// E[Tr_b(W)] for the Wigner tensor W = X / N^{(p-1)/2}, by visiting every
/// assignment of labels to the edges of b and grouping equal entries.
/// Throws ResourceError beyond kMaxOracleTerms and Unsupported for laws
/// without a moment oracle.
Rational exact_expected_trace_oracle(const CombinatorialMap& b, std::size_t N, const EntryDistribution& dist);

/// The same expectation organised as a sum over edge partitions pi of the
/// falling factorial N^(|pi|) times the product of entry moments of the
/// hyperedges of H(dual(b_pi)). Throws ResourceError beyond kMaxPartitionEdges.
Rational expected_trace_partition(const CombinatorialMap& b, std::size_t N, const EntryDistribution& dist);

/// (p-1)!^{-|V|/2}, the limit of E[Tr_b]/N for melonic b.
Rational melonic_alpha(unsigned p, std::size_t vertex_count);

}  // namespace melon
