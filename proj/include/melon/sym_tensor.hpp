#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace melon {

using MultiIndex = std::vector<std::uint32_t>;

/// Real symmetric tensor of order p and dimension N stored once per sorted
/// multi-index i_1 <= ... <= i_p, in colex order of the sorted index.
class SymTensor {
public:
    SymTensor() = default;
    /// Zero tensor.
    SymTensor(unsigned p, std::size_t N);
    /// Entries given in colex order; throws ContractViolation on a size mismatch.
    SymTensor(unsigned p, std::size_t N, std::vector<double> entries);

    /// C(N+p-1, p).
    static std::size_t storage_size(unsigned p, std::size_t N);

    unsigned order() const { return p_; }
    std::size_t dimension() const { return n_; }

    /// Value at any (not necessarily sorted) multi-index.
    double operator()(std::span<const std::uint32_t> index) const;
    void set(std::span<const std::uint32_t> index, double value);

    /// Colex rank of a sorted multi-index.
    std::size_t rank(std::span<const std::uint32_t> sorted) const;
    MultiIndex unrank(std::size_t r) const;

    std::span<const double> entries() const { return entries_; }
    std::span<double> entries() { return entries_; }

    /// All N^p entries, row-major, index i_1 slowest.
    std::vector<double> dense() const;
    /// Symmetric tensor read from a dense row-major array (only sorted positions are read).
    static SymTensor from_dense(unsigned p, std::size_t N, std::span<const double> dense);

    /// The matrix of an order-2 tensor.
    Eigen::MatrixXd as_matrix() const;
    static SymTensor from_matrix(const Eigen::MatrixXd& m);

    /// Sum of squares over all N^p positions.
    double frobenius_norm_squared() const;

    friend bool operator==(const SymTensor&, const SymTensor&) = default;

private:
    unsigned p_ = 0;
    std::size_t n_ = 0;
    std::vector<double> entries_;
    // binom_[k][i] = C(i + k - 1, k), the colex weight of value i at slot k (1-based).
    std::vector<std::vector<std::size_t>> binom_;

    void build_table();
};

/// Advances a sorted multi-index to its colex successor; false after the last one.
bool next_sorted_index(MultiIndex& index, std::size_t N);

/// Number of distinct orderings of a multi-index: p! / prod c_a!.
std::size_t distinct_permutations(std::span<const std::uint32_t> index);

/// Contracts the first k = vectors.size() legs with the given vectors.
/// Throws ContractViolation on k > p or a length mismatch.
SymTensor contract(const SymTensor& t, const std::vector<Eigen::VectorXd>& vectors);

/// (U . T)_{i_1..i_p} = sum_j U_{i_1 j_1} ... U_{i_p j_p} T_{j_1..j_p}.
SymTensor multilinear_transform(const SymTensor& t, const Eigen::MatrixXd& u);

}  // namespace melon
