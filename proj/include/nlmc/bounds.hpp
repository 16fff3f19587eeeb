#pragma once

#include <functional>
#include <vector>

#include "nlmc/coefficients.hpp"

namespace nlmc {

// Inputs of the k-step convergence bounds. `regime` is decided once via
// classify_regime at construction; the bound evaluators never re-derive it.
struct BoundParams {
    int k = 1;
    double alpha_k = 0.0;
    double lambda_k = 0.0;
    double lambda_1 = 0.0;
    double initial_tv = 0.0;  // mass-2 convention, in [0, 2]
    Regime regime = Regime::inconclusive;

    static BoundParams make(int k, double alpha_k, double lambda_k, double lambda_1,
                            double initial_tv, double tie_tol = 1e-9);
};

// Theoretical TV bound after n steps.
//   exponential: initial_tv * (1 - alpha_k + lambda_k)^floor(n/k) * (1 + lambda_1)^(n mod k)
//   linear:      initial_tv / (2 + lambda_k * n * initial_tv) * (1 + lambda_1)^(n mod k)
// Throws for the inconclusive regime: with lambda_k > alpha_k there may be
// many invariant measures or none, and no bound is available.
double bound_at(const BoundParams& params, int n);

struct BoundCurve {
    std::vector<std::pair<int, double>> values;  // (n, bound)
};

BoundCurve bound_curve(const BoundParams& params, int n_max);

// Geometric per-step factor (1 - alpha_k + lambda_k)^(1/k). Exponential
// regime only.
double per_step_rate(const BoundParams& params);

// g(x) = integral_x^{a0} dt / (t * psi(t)), by adaptive Simpson quadrature.
// psi must be continuous, non-decreasing, psi(0) = 0 and psi(t) > 0 for
// t > 0; requires 0 < x <= a0 <= 1.
double lemma_g(double a0, const std::function<double(double)>& psi, double x,
               double rel_tol = 1e-10);

// Inverse of g on (0, a0] by bisection (g is strictly decreasing, g(a0) = 0).
double lemma_g_inverse(double a0, const std::function<double(double)>& psi, double y,
                       double rel_tol = 1e-10);

// [g^{-1}(0), ..., g^{-1}(n_max)]: the closed bound on any sequence with
// a_{n+1} <= a_n (1 - psi(a_n)). Computed incrementally: x_{n+1} solves
// integral_{x_{n+1}}^{x_n} dt/(t psi(t)) = 1, which telescopes to g(x_n) = n.
std::vector<double> lemma_bound_sequence(double a0, const std::function<double(double)>& psi,
                                         int n_max);

// The one-step (k = 1) rates: 2 (1 - (alpha - lambda))^n when lambda < alpha,
// and the 2 / (2 + 2 lambda n) form at the tie. Coincides with bound_at for
// k = 1, initial_tv = 2.
double butkovsky_one_step_bound(double alpha, double lambda, int n, double tie_tol = 1e-9);

}  // namespace nlmc
