#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "melon/maps.hpp"
#include "melon/sym_tensor.hpp"

namespace melon {

/// Evaluates trace invariants of one tensor. The dense N^p copy of the
/// tensor is built once and shared by every evaluation.
class TraceEvaluator {
public:
    explicit TraceEvaluator(const SymTensor& t);

    const SymTensor& tensor() const { return tensor_; }

    /// Tr_b(T) by tensor-network contraction: self-loops are traced first,
    /// then node pairs are merged greedily by smallest intermediate size.
    /// Throws ContractViolation when the valence of b differs from the order of T.
    double trace(const CombinatorialMap& b) const;

private:
    SymTensor tensor_;
    std::vector<double> dense_;
};

double trace_invariant(const CombinatorialMap& b, const SymTensor& t);

/// Tr_b(T) as an |E|-fold nested sum over edge labels; used as a reference.
double trace_invariant_naive(const CombinatorialMap& b, const SymTensor& t);

/// Tr^0 of b_pi: the sum over pairwise distinct labels of the blocks of pi.
double injective_trace(const CombinatorialMap& b, const EdgePartition& pi, const SymTensor& t);

/// Maps of the enumeration grouped by their underlying multigraph G(b); the
/// trace invariant depends on b only through G(b) because T is symmetric.
struct MapClass {
    CombinatorialMap representative;
    std::size_t count = 0;
};

/// Classes of rooted connected p-regular maps with n vertices. For p = 2 the
/// single class is the n-cycle and no enumeration takes place. Results are cached.
const std::vector<MapClass>& balanced_classes(unsigned p, unsigned n);

/// I_n(T) = sum over rooted connected maps with n vertices of Tr_b(T); I_0 = N.
double balanced_invariant(unsigned n, const SymTensor& t);
double balanced_invariant(unsigned n, const TraceEvaluator& eval);

/// sum_{n=0}^{K} I_n(T) / (N z^{n+1}).
std::complex<double> resolvent_series(const SymTensor& t, std::complex<double> z, unsigned K);

/// Neumaier-compensated sum.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + correction_; }

private:
    double sum_ = 0.0;
    double correction_ = 0.0;
};

}  // namespace melon
