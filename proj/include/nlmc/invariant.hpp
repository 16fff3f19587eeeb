#pragma once

#include "nlmc/bounds.hpp"
#include "nlmc/kernel.hpp"
#include "nlmc/measure.hpp"

namespace nlmc {

struct FixedPointResult {
    Distribution pi;
    int iterations = 0;
    double residual = 0.0;  // tv(pi P_pi, pi)
    bool converged = false;
};

// Solves pi = pi P_pi by iterating the law flow. Convergence requires both
// the successive-iterate TV and the invariance residual to drop below tol;
// hitting max_iter is reported, not thrown (the ergodicity conditions may
// simply fail for this kernel).
FixedPointResult find_invariant(const KernelHandle& kernel, const Distribution& mu0,
                                double tol = 1e-13, int max_iter = 1000000);

struct DecayCurve {
    struct Row {
        int n;
        double empirical_tv;  // tv(mu_n, pi)
        double bound;         // bound_at(params, n)
    };
    std::vector<Row> rows;
};

// Empirical ||mu_n - pi|| against the theoretical bound for n = 0..n_max.
DecayCurve decay_curve(const KernelHandle& kernel, const Distribution& mu0, const Distribution& pi,
                       const BoundParams& params, int n_max);

struct BoundCheck {
    bool ok = true;
    int first_violation_n = -1;
};

// True iff empirical_tv <= bound + slack on every row.
BoundCheck verify_bound(const DecayCurve& curve, double slack = 1e-9);

}  // namespace nlmc
