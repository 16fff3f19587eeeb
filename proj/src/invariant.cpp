#include "nlmc/invariant.hpp"

#include <stdexcept>

namespace nlmc {

FixedPointResult find_invariant(const KernelHandle& kernel, const Distribution& mu0, double tol,
                                int max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_invariant: tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("find_invariant: max_iter must be >= 1");

    Distribution mu = mu0;
    double last_diff = 2.0;
    for (int it = 1; it <= max_iter; ++it) {
        Distribution next = step(kernel, mu);
        last_diff = tv_distance(next, mu);
        if (last_diff <= tol) {
            // candidate pi = next; its invariance residual is the next diff
            Distribution after = step(kernel, next);
            double residual = tv_distance(after, next);
            if (residual <= tol) return {next, it, residual, true};
        }
        mu = std::move(next);
    }
    return {mu, max_iter, last_diff, false};
}

DecayCurve decay_curve(const KernelHandle& kernel, const Distribution& mu0, const Distribution& pi,
                       const BoundParams& params, int n_max) {
    if (n_max < 0) throw std::invalid_argument("decay_curve: n_max must be >= 0");
    DecayCurve curve;
    curve.rows.reserve(static_cast<std::size_t>(n_max) + 1);
    Distribution mu = mu0;
    for (int n = 0; n <= n_max; ++n) {
        curve.rows.push_back({n, tv_distance(mu, pi), bound_at(params, n)});
        if (n < n_max) mu = step(kernel, mu);
    }
    return curve;
}

BoundCheck verify_bound(const DecayCurve& curve, double slack) {
    if (!(slack >= 0.0)) throw std::invalid_argument("verify_bound: slack must be >= 0");
    for (const auto& row : curve.rows)
        if (row.empirical_tv > row.bound + slack) return {false, row.n};
    return {true, -1};
}

}  // namespace nlmc
