#include "nlmc/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nlmc/simd.hpp"

namespace nlmc {

StochasticMatrix StochasticMatrix::validated(std::size_t n, std::vector<double> entries,
                                             double row_tol, double neg_tol) {
    if (entries.size() != n * n) throw std::invalid_argument("StochasticMatrix: wrong entry count");
    StochasticMatrix m(n);
    m.a_ = std::move(entries);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double& v = m.a_[i * n + j];
            if (!(v >= -neg_tol))
                throw std::runtime_error("stochastic matrix: negative entry " + std::to_string(v) +
                                         " in row " + std::to_string(i + 1));
            if (v < 0) v = 0.0;
            sum += v;
        }
        if (std::abs(sum - 1.0) > row_tol)
            throw std::runtime_error("stochastic matrix: row " + std::to_string(i + 1) +
                                     " sums to " + std::to_string(sum) + ", not 1");
    }
    return m;
}

AffineKernel::AffineKernel(std::size_t n_states, std::vector<double> base, std::vector<double> coeff)
    : n_(n_states), base_(std::move(base)), coeff_(std::move(coeff)) {
    if (n_ == 0) throw std::invalid_argument("AffineKernel: empty state space");
    if (base_.size() != n_ * n_) throw std::invalid_argument("AffineKernel: base must be N x N");
    if (coeff_.size() != n_ * n_ * n_) throw std::invalid_argument("AffineKernel: coeff must be N x N x N");

    const double tol = 1e-12;
    for (std::size_t i = 0; i < n_; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n_; ++j) sum += base_[i * n_ + j];
        if (std::abs(sum - 1.0) > tol)
            throw std::invalid_argument("AffineKernel: base row " + std::to_string(i + 1) +
                                        " sums to " + std::to_string(sum) + ", not 1");
    }
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t l = 0; l < n_; ++l) {
            double sum = 0.0;
            for (std::size_t j = 0; j < n_; ++j) sum += coeff_[(i * n_ + j) * n_ + l];
            if (std::abs(sum) > tol)
                throw std::invalid_argument(
                    "AffineKernel: coeff column sum for row " + std::to_string(i + 1) + ", state " +
                    std::to_string(l + 1) + " is " + std::to_string(sum) +
                    "; row sums would depend on the measure");
        }
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t l = 0; l < n_; ++l)
                if (base_[i * n_ + j] + coeff_[(i * n_ + j) * n_ + l] < -tol)
                    throw std::invalid_argument(
                        "AffineKernel: entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") is negative at vertex " + std::to_string(l + 1));

    slices_.assign(n_ * n_ * n_, 0.0);
    for (std::size_t l = 0; l < n_; ++l)
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                slices_[(l * n_ + i) * n_ + j] = coeff_[(i * n_ + j) * n_ + l];
}

StochasticMatrix AffineKernel::evaluate(const Distribution& mu) const {
    if (mu.size() != n_)
        throw std::invalid_argument("AffineKernel::evaluate: dimension mismatch");
    std::vector<double> out = base_;
    const auto& ops = simd::ops();
    for (std::size_t l = 0; l < n_; ++l) {
        double w = mu[l];
        if (w != 0.0) ops.axpy(w, slices_.data() + l * n_ * n_, out.data(), n_ * n_);
    }
    return StochasticMatrix::validated(n_, std::move(out));
}

KernelHandle::KernelHandle(AffineKernel kernel) {
    n_ = kernel.n_states();
    affine_.emplace(std::move(kernel));
}

KernelHandle KernelHandle::black_box(std::size_t n_states, Evaluator eval, bool thread_safe) {
    if (n_states == 0) throw std::invalid_argument("KernelHandle: empty state space");
    if (!eval) throw std::invalid_argument("KernelHandle: null evaluator");
    KernelHandle h;
    h.n_ = n_states;
    h.eval_ = std::move(eval);
    if (!thread_safe) h.guard_ = std::make_shared<std::mutex>();
    return h;
}

StochasticMatrix KernelHandle::evaluate(const Distribution& mu) const {
    if (mu.size() != n_)
        throw std::invalid_argument("KernelHandle::evaluate: dimension mismatch");
    if (affine_) return affine_->evaluate(mu);
    StochasticMatrix raw(n_);
    if (guard_) {
        std::lock_guard<std::mutex> lock(*guard_);
        raw = eval_(mu);
    } else {
        raw = eval_(mu);
    }
    if (raw.size() != n_)
        throw std::runtime_error("black-box kernel returned a matrix of wrong dimension");
    return StochasticMatrix::validated(n_, raw.entries());
}

StochasticMatrix evaluate(const KernelHandle& kernel, const Distribution& mu) {
    return kernel.evaluate(mu);
}

Distribution step(const KernelHandle& kernel, const Distribution& mu) {
    StochasticMatrix p = kernel.evaluate(mu);
    std::size_t n = mu.size();
    std::vector<double> out(n, 0.0);
    const auto& ops = simd::ops();
    for (std::size_t i = 0; i < n; ++i) {
        double w = mu[i];
        if (w != 0.0) ops.axpy(w, p.row(i), out.data(), n);
    }
    // row sums of p are only guaranteed to 1e-10, so allow that much drift
    return Distribution(std::move(out), 1e-9);
}

std::vector<Distribution> law_flow(const KernelHandle& kernel, const Distribution& mu0, int n) {
    if (n < 0) throw std::invalid_argument("law_flow: n must be >= 0");
    std::vector<Distribution> flow;
    flow.reserve(static_cast<std::size_t>(n) + 1);
    flow.push_back(mu0);
    for (int t = 0; t < n; ++t) flow.push_back(step(kernel, flow.back()));
    return flow;
}

StochasticMatrix matmul(const StochasticMatrix& a, const StochasticMatrix& b) {
    std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("matmul: dimension mismatch");
    StochasticMatrix c(n);
    const auto& ops = simd::ops();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < n; ++t) {
            double w = a(i, t);
            if (w != 0.0) ops.axpy(w, b.row(t), c.row(i), n);
        }
    return c;
}

StochasticMatrix k_step_kernel(const KernelHandle& kernel, const Distribution& mu, int k) {
    if (k < 1) throw std::invalid_argument("k_step_kernel: k must be >= 1");
    std::vector<Distribution> flow = law_flow(kernel, mu, k - 1);
    StochasticMatrix q = kernel.evaluate(flow[0]);
    for (int t = 1; t < k; ++t) q = matmul(q, kernel.evaluate(flow[static_cast<std::size_t>(t)]));
    return q;
}

}  // namespace nlmc
