#include "nlmc/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nlmc {

BoundParams BoundParams::make(int k, double alpha_k, double lambda_k, double lambda_1,
                              double initial_tv, double tie_tol) {
    if (k < 1) throw std::invalid_argument("BoundParams: k must be >= 1");
    if (!(alpha_k > 0.0 && alpha_k <= 1.0))
        throw std::invalid_argument("BoundParams: alpha_k must be in (0, 1]");
    if (!(lambda_k >= 0.0)) throw std::invalid_argument("BoundParams: lambda_k must be >= 0");
    if (!(lambda_1 >= 0.0)) throw std::invalid_argument("BoundParams: lambda_1 must be >= 0");
    if (!(initial_tv >= 0.0 && initial_tv <= 2.0))
        throw std::invalid_argument("BoundParams: initial_tv must be in [0, 2]");
    BoundParams p{k, alpha_k, lambda_k, lambda_1, initial_tv,
                  classify_regime(alpha_k, lambda_k, tie_tol)};
    return p;
}

double bound_at(const BoundParams& params, int n) {
    if (n < 0) throw std::invalid_argument("bound_at: n must be >= 0");
    if (params.regime == Regime::inconclusive)
        throw std::runtime_error("regime inconclusive, no bound available");
    int q = n / params.k;
    int r = n % params.k;
    double tail = std::pow(1.0 + params.lambda_1, r);
    if (params.regime == Regime::exponential)
        return params.initial_tv * std::pow(1.0 - params.alpha_k + params.lambda_k, q) * tail;
    return params.initial_tv / (2.0 + params.lambda_k * n * params.initial_tv) * tail;
}

BoundCurve bound_curve(const BoundParams& params, int n_max) {
    if (n_max < 0) throw std::invalid_argument("bound_curve: n_max must be >= 0");
    BoundCurve curve;
    curve.values.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) curve.values.emplace_back(n, bound_at(params, n));
    return curve;
}

double per_step_rate(const BoundParams& params) {
    if (params.regime != Regime::exponential)
        throw std::runtime_error("per_step_rate: defined only for the exponential regime");
    return std::pow(1.0 - params.alpha_k + params.lambda_k, 1.0 / params.k);
}

namespace {

// Adaptive Simpson with Richardson correction. tol is absolute for the
// panel; each split halves it.
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b);
    double m = 0.5 * (a + b);
    double fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // drive panels well below the requested relative tolerance; the
    // integrand is cheap and the Richardson step usually overshoots anyway
    double tol = std::max(std::abs(whole), std::numeric_limits<double>::min()) * rel_tol * 0.02;
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

std::function<double(double)> lemma_integrand(const std::function<double(double)>& psi) {
    return [&psi](double t) {
        double p = psi(t);
        if (!(p > 0.0))
            throw std::domain_error("lemma_g: psi(t) must be positive for t > 0 (t = " +
                                    std::to_string(t) + ")");
        return 1.0 / (t * p);
    };
}

}  // namespace

double lemma_g(double a0, const std::function<double(double)>& psi, double x, double rel_tol) {
    if (!(a0 > 0.0 && a0 <= 1.0)) throw std::invalid_argument("lemma_g: a0 must be in (0, 1]");
    if (!(x > 0.0)) throw std::invalid_argument("lemma_g: x must be > 0");
    if (x > a0) throw std::invalid_argument("lemma_g: x must be <= a0");
    if (x == a0) return 0.0;
    auto f = lemma_integrand(psi);
    return integrate(f, x, a0, rel_tol);
}

double lemma_g_inverse(double a0, const std::function<double(double)>& psi, double y,
                       double rel_tol) {
    if (!(y >= 0.0)) throw std::invalid_argument("lemma_g_inverse: y must be >= 0");
    if (y == 0.0) return a0;
    // bracket: g(a0) = 0 and g increases without bound as x -> 0+
    double lo = 0.5 * a0;
    while (lemma_g(a0, psi, lo, rel_tol) < y) {
        lo *= 0.5;
        if (lo < 1e-300) throw std::runtime_error("lemma_g_inverse: g appears bounded above");
    }
    double hi = a0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (lemma_g(a0, psi, mid, rel_tol) >= y) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> lemma_bound_sequence(double a0, const std::function<double(double)>& psi,
                                         int n_max) {
    if (!(a0 > 0.0 && a0 <= 1.0))
        throw std::invalid_argument("lemma_bound_sequence: a0 must be in (0, 1]");
    if (n_max < 0) throw std::invalid_argument("lemma_bound_sequence: n_max must be >= 0");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    out.push_back(a0);
    auto f = lemma_integrand(psi);
    double x = a0;
    for (int n = 1; n <= n_max; ++n) {
        // next value solves integral_{x'}^{x} = 1; the increments telescope
        // to g(x_n) = n
        double lo = 0.5 * x;
        while (integrate(f, lo, x, 1e-10) < 1.0) {
            lo *= 0.5;
            if (lo < 1e-300)
                throw std::runtime_error("lemma_bound_sequence: psi too flat, g is bounded");
        }
        double hi = x;
        for (int it = 0; it < 200 && (hi - lo) > 1e-13 * hi; ++it) {
            double mid = 0.5 * (lo + hi);
            if (integrate(f, mid, x, 1e-10) >= 1.0) lo = mid;
            else hi = mid;
        }
        x = 0.5 * (lo + hi);
        out.push_back(x);
    }
    return out;
}

double butkovsky_one_step_bound(double alpha, double lambda, int n, double tie_tol) {
    if (n < 0) throw std::invalid_argument("butkovsky_one_step_bound: n must be >= 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("butkovsky_one_step_bound: alpha must be in (0, 1)");
    if (!(lambda >= 0.0)) throw std::invalid_argument("butkovsky_one_step_bound: lambda must be >= 0");
    Regime regime = classify_regime(alpha, lambda, tie_tol);
    if (regime == Regime::inconclusive)
        throw std::runtime_error("regime inconclusive, no bound available");
    if (regime == Regime::exponential) return 2.0 * std::pow(1.0 - (alpha - lambda), n);
    return 2.0 / (2.0 + lambda * n * 2.0);
}

}  // namespace nlmc
