#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "nlmc/measure.hpp"

namespace nlmc {

// Row-stochastic N x N matrix, row-major.
class StochasticMatrix {
public:
    explicit StochasticMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

    // Validates row sums (within row_tol of 1) and clamps entries in
    // [-neg_tol, 0) to zero; anything more negative is an error naming the row.
    static StochasticMatrix validated(std::size_t n, std::vector<double> entries,
                                      double row_tol = 1e-10, double neg_tol = 1e-12);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const double* row(std::size_t i) const { return a_.data() + i * n_; }
    double* row(std::size_t i) { return a_.data() + i * n_; }
    const std::vector<double>& entries() const { return a_; }

private:
    std::size_t n_;
    std::vector<double> a_;
};

// Measure-affine transition kernel: P_mu(i,j) = base[i][j] + sum_l coeff[i][j][l] * mu[l].
// Validated at construction:
//   - each base row sums to 1            (within 1e-12)
//   - sum_j coeff[i][j][l] = 0 per (i,l) (row sums independent of mu)
//   - base[i][j] + coeff[i][j][l] >= -1e-12 per (i,j,l)
//     (entries non-negative at every vertex, hence on the whole simplex)
class AffineKernel {
public:
    AffineKernel(std::size_t n_states, std::vector<double> base, std::vector<double> coeff);

    std::size_t n_states() const { return n_; }
    StochasticMatrix evaluate(const Distribution& mu) const;

    double base_at(std::size_t i, std::size_t j) const { return base_[i * n_ + j]; }
    double coeff_at(std::size_t i, std::size_t j, std::size_t l) const {
        return coeff_[(i * n_ + j) * n_ + l];
    }
    const std::vector<double>& base() const { return base_; }
    const std::vector<double>& coeff() const { return coeff_; }

private:
    std::size_t n_;
    std::vector<double> base_;    // [i][j]
    std::vector<double> coeff_;   // [i][j][l], the file-schema layout
    std::vector<double> slices_;  // [l][i][j], evaluation layout: P = base + sum_l mu_l * slice_l
};

// Either an AffineKernel or an opaque evaluator Distribution -> matrix.
// Evaluation of a black box is re-validated on every call; evaluators that
// are not thread-compatible are serialized behind an internal mutex.
class KernelHandle {
public:
    using Evaluator = std::function<StochasticMatrix(const Distribution&)>;

    KernelHandle(AffineKernel kernel);  // NOLINT: implicit by design
    static KernelHandle black_box(std::size_t n_states, Evaluator eval, bool thread_safe = true);

    std::size_t n_states() const { return n_; }
    bool is_affine() const { return affine_.has_value(); }
    const AffineKernel* affine() const { return affine_ ? &*affine_ : nullptr; }

    StochasticMatrix evaluate(const Distribution& mu) const;

private:
    KernelHandle() = default;
    std::size_t n_ = 0;
    std::optional<AffineKernel> affine_;
    Evaluator eval_;
    std::shared_ptr<std::mutex> guard_;  // set when the evaluator is not thread-safe
};

StochasticMatrix evaluate(const KernelHandle& kernel, const Distribution& mu);

// One step of the deterministic law flow: mu * P_mu, renormalized.
Distribution step(const KernelHandle& kernel, const Distribution& mu);

// [mu_0, mu_1, ..., mu_n]
std::vector<Distribution> law_flow(const KernelHandle& kernel, const Distribution& mu0, int n);

// Q_mu = P_mu * P_{mu_1(mu)} * ... * P_{mu_{k-1}(mu)} along the law flow.
StochasticMatrix k_step_kernel(const KernelHandle& kernel, const Distribution& mu, int k);

// C = A * B (both n x n)
StochasticMatrix matmul(const StochasticMatrix& a, const StochasticMatrix& b);

}  // namespace nlmc
