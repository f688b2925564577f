#include "melon/sym_tensor.hpp"

#include <algorithm>
#include <map>

#include "melon/errors.hpp"

namespace melon {

namespace {

std::size_t ipow(std::size_t base, unsigned e) {
    std::size_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

std::size_t SymTensor::storage_size(unsigned p, std::size_t N) {
    // C(N+p-1, p) computed incrementally; exact at every step.
    std::size_t r = 1;
    for (unsigned k = 1; k <= p; ++k) r = r * (N + k - 1) / k;
    return r;
}

SymTensor::SymTensor(unsigned p, std::size_t N) : p_(p), n_(N), entries_(storage_size(p, N), 0.0) {
    if (N == 0) throw ContractViolation("tensor dimension must be positive");
    build_table();
}

SymTensor::SymTensor(unsigned p, std::size_t N, std::vector<double> entries)
    : p_(p), n_(N), entries_(std::move(entries)) {
    if (N == 0) throw ContractViolation("tensor dimension must be positive");
    if (entries_.size() != storage_size(p, N)) {
        throw ContractViolation("entry count differs from C(N+p-1, p)");
    }
    build_table();
}

void SymTensor::build_table() {
    binom_.assign(p_ + 1, std::vector<std::size_t>(n_, 0));
    for (unsigned k = 1; k <= p_; ++k) {
        for (std::size_t i = 0; i < n_; ++i) binom_[k][i] = storage_size(k, i);
    }
}

std::size_t SymTensor::rank(std::span<const std::uint32_t> sorted) const {
    std::size_t r = 0;
    for (unsigned k = 1; k <= p_; ++k) r += binom_[k][sorted[k - 1]];
    return r;
}

MultiIndex SymTensor::unrank(std::size_t r) const {
    MultiIndex out(p_);
    for (unsigned k = p_; k >= 1; --k) {
        // Largest i with C(i+k-1, k) <= r.
        std::size_t i = k < p_ ? out[k] : n_ - 1;
        while (binom_[k][i] > r) --i;
        out[k - 1] = static_cast<std::uint32_t>(i);
        r -= binom_[k][i];
    }
    return out;
}

double SymTensor::operator()(std::span<const std::uint32_t> index) const {
    if (index.size() != p_) throw ContractViolation("multi-index length differs from the order");
    if (std::is_sorted(index.begin(), index.end())) return entries_[rank(index)];
    MultiIndex sorted(index.begin(), index.end());
    std::sort(sorted.begin(), sorted.end());
    return entries_[rank(sorted)];
}

void SymTensor::set(std::span<const std::uint32_t> index, double value) {
    if (index.size() != p_) throw ContractViolation("multi-index length differs from the order");
    MultiIndex sorted(index.begin(), index.end());
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty() && sorted.back() >= n_) throw ContractViolation("index out of range");
    entries_[rank(sorted)] = value;
}

std::vector<double> SymTensor::dense() const {
    const std::size_t total = ipow(n_, p_);
    std::vector<double> out(total);
    MultiIndex idx(p_, 0), sorted(p_);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (unsigned k = p_; k-- > 0;) {
            idx[k] = static_cast<std::uint32_t>(rest % n_);
            rest /= n_;
        }
        sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        out[flat] = entries_[rank(sorted)];
    }
    return out;
}

SymTensor SymTensor::from_dense(unsigned p, std::size_t N, std::span<const double> dense) {
    if (dense.size() != ipow(N, p)) throw ContractViolation("dense array has the wrong size");
    SymTensor t(p, N);
    MultiIndex idx(p, 0);
    std::size_t r = 0;
    do {
        std::size_t flat = 0;
        for (unsigned k = 0; k < p; ++k) flat = flat * N + idx[k];
        t.entries_[r++] = dense[flat];
    } while (next_sorted_index(idx, N));
    return t;
}

Eigen::MatrixXd SymTensor::as_matrix() const {
    if (p_ != 2) throw ContractViolation("as_matrix needs an order-2 tensor");
    Eigen::MatrixXd m(n_, n_);
    for (std::uint32_t i = 0; i < n_; ++i)
        for (std::uint32_t j = 0; j < n_; ++j) {
            const std::uint32_t idx[2] = {std::min(i, j), std::max(i, j)};
            m(i, j) = entries_[rank(idx)];
        }
    return m;
}

SymTensor SymTensor::from_matrix(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw ContractViolation("matrix must be square and nonempty");
    SymTensor t(2, static_cast<std::size_t>(m.rows()));
    for (std::uint32_t j = 0; j < m.cols(); ++j)
        for (std::uint32_t i = 0; i <= j; ++i) {
            const std::uint32_t idx[2] = {i, j};
            t.entries_[t.rank(idx)] = m(i, j);
        }
    return t;
}

double SymTensor::frobenius_norm_squared() const {
    double total = 0.0;
    MultiIndex idx(p_, 0);
    std::size_t r = 0;
    do {
        const double v = entries_[r++];
        total += static_cast<double>(distinct_permutations(idx)) * v * v;
    } while (next_sorted_index(idx, n_));
    return total;
}

bool next_sorted_index(MultiIndex& index, std::size_t N) {
    const std::size_t p = index.size();
    for (std::size_t k = 0; k < p; ++k) {
        const std::size_t bound = k + 1 < p ? index[k + 1] : N - 1;
        if (index[k] < bound) {
            ++index[k];
            std::fill(index.begin(), index.begin() + static_cast<std::ptrdiff_t>(k), 0u);
            return true;
        }
    }
    return false;
}

std::size_t distinct_permutations(std::span<const std::uint32_t> index) {
    std::map<std::uint32_t, unsigned> counts;
    for (std::uint32_t i : index) ++counts[i];
    std::size_t r = 1;
    unsigned placed = 0;
    for (const auto& [value, c] : counts) {
        // Multinomial built as a product of binomials C(placed + c, c).
        for (unsigned j = 1; j <= c; ++j) r = r * (placed + j) / j;
        placed += c;
    }
    return r;
}

SymTensor contract(const SymTensor& t, const std::vector<Eigen::VectorXd>& vectors) {
    const unsigned p = t.order();
    const std::size_t N = t.dimension();
    const auto k = static_cast<unsigned>(vectors.size());
    if (k > p) throw ContractViolation("more contraction vectors than tensor legs");
    for (const auto& u : vectors) {
        if (static_cast<std::size_t>(u.size()) != N) throw ContractViolation("vector length differs from N");
    }
    if (k == 0) return t;
    SymTensor out(p - k, N);
    MultiIndex rest(p - k, 0), full(p);
    MultiIndex contracted(k, 0);
    std::size_t r = 0;
    do {
        std::copy(rest.begin(), rest.end(), full.begin() + k);
        double total = 0.0;
        std::fill(contracted.begin(), contracted.end(), 0u);
        // Odometer over the k contracted legs.
        while (true) {
            double weight = 1.0;
            for (unsigned j = 0; j < k; ++j) {
                weight *= vectors[j](contracted[j]);
                full[j] = contracted[j];
            }
            if (weight != 0.0) total += weight * t(full);
            unsigned j = 0;
            while (j < k && ++contracted[j] == N) contracted[j++] = 0;
            if (j == k) break;
        }
        out.entries()[r++] = total;
    } while (next_sorted_index(rest, N));
    return out;
}

SymTensor multilinear_transform(const SymTensor& t, const Eigen::MatrixXd& u) {
    const unsigned p = t.order();
    const std::size_t N = t.dimension();
    if (static_cast<std::size_t>(u.rows()) != N || static_cast<std::size_t>(u.cols()) != N) {
        throw ContractViolation("transform must be N x N");
    }
    std::vector<double> current = t.dense();
    std::vector<double> next(current.size());
    // Apply U along each mode in turn: view the array as (before, N, after).
    for (unsigned mode = 0; mode < p; ++mode) {
        const std::size_t after = ipow(N, p - 1 - mode);
        const std::size_t before = current.size() / (N * after);
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t a = 0; a < before; ++a)
            for (std::size_t i = 0; i < N; ++i)
                for (std::size_t j = 0; j < N; ++j) {
                    const double w = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                    const double* src = &current[(a * N + j) * after];
                    double* dst = &next[(a * N + i) * after];
                    for (std::size_t c = 0; c < after; ++c) dst[c] += w * src[c];
                }
        std::swap(current, next);
    }
    return SymTensor::from_dense(p, N, current);
}

}  // namespace melon
