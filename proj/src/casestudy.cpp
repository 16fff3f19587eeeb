#include "nlmc/casestudy.hpp"

#include <cmath>
#include <stdexcept>

#include "nlmc/bounds.hpp"

namespace nlmc {

ExampleChain build_example(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 0.5))
        throw std::invalid_argument("build_example: gamma must be in [0, 0.5]");
    const std::size_t n = 4;
    std::vector<double> base{
        0.0, 0.0, 0.5, 0.5,  //
        0.5, 0.5, 0.0, 0.0,  //
        0.5, 0.0, 0.5, 0.0,  //
        0.0, 0.5, 0.0, 0.5,
    };
    std::vector<double> coeff(n * n * n, 0.0);
    // P_mu(1,2) = gamma * mu(1), P_mu(1,3) = 0.5 - gamma * mu(1)
    coeff[(0 * n + 1) * n + 0] = gamma;
    coeff[(0 * n + 2) * n + 0] = -gamma;
    return ExampleChain{gamma, AffineKernel(n, std::move(base), std::move(coeff))};
}

StochasticMatrix symbolic_three_step(double gamma, const Distribution& mu) {
    if (mu.size() != 4) throw std::invalid_argument("symbolic_three_step: needs 4 states");
    double g = gamma;
    double nu1 = mu[0];
    double s23 = mu[1] + mu[2];
    std::vector<double> q{
        0.25, 0.0625 * (4 + g + 4 * g * nu1),  0.0625 * (4 - g - 4 * g * nu1),  0.25,  //
        0.25, 0.0625 * (4 + g + 2 * g * s23),  0.0625 * (4 - g - 2 * g * s23),  0.25,  //
        0.25, 0.0625 * (2 + g + 2 * g * s23),  0.0625 * (6 - g - 2 * g * s23),  0.25,  //
        0.25, 0.0625 * (6 + g),                0.0625 * (2 - g),                0.25,
    };
    return StochasticMatrix::validated(4, std::move(q));
}

SymbolicCheck check_three_step_symbolic(double gamma, const Distribution& mu, double tol) {
    ExampleChain chain = build_example(gamma);
    StochasticMatrix computed = k_step_kernel(chain.kernel, mu, 3);
    StochasticMatrix symbolic = symbolic_three_step(gamma, mu);
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            worst = std::max(worst, std::abs(computed(i, j) - symbolic(i, j)));
    return SymbolicCheck{worst <= tol, worst};
}

CoefficientReport paper_coefficients(double gamma, int k) {
    if (!(gamma >= 0.0 && gamma <= 0.5))
        throw std::invalid_argument("paper_coefficients: gamma must be in [0, 0.5]");
    CoefficientReport report;
    report.k = k;
    report.lambda_1 = gamma;
    if (k == 3) {
        report.alpha_k = 0.75;
        report.lambda_k = gamma / 4.0;
    } else if (k == 1) {
        report.alpha_k = 0.0;
        report.lambda_k = gamma;
    } else {
        throw std::invalid_argument("paper_coefficients: published values exist only for k in {1, 3}");
    }
    report.regime = classify_regime(report.alpha_k, report.lambda_k, 1e-9);
    return report;
}

Table1 table1(int resolution, std::uint64_t samples, std::uint64_t seed, int threads) {
    if (resolution < 1) throw std::invalid_argument("table1: resolution must be >= 1");
    SimplexGrid grid = simplex_grid(4, resolution);
    SearchConfig cfg;
    cfg.threads = threads;
    Table1 table;
    for (double gamma : {0.0, 0.5}) {
        ExampleChain chain = build_example(gamma);
        std::vector<Distribution> extra = sample_dirichlet(4, samples, seed);
        double a2 = estimate_alpha(chain.kernel, 2, grid, extra, cfg);
        double l2 = estimate_lambda(chain.kernel, 2, grid, extra, cfg.min_sep, cfg);
        BoundParams p2 = BoundParams::make(2, a2, l2, gamma, 2.0);
        table.rows.push_back({2, gamma, a2, l2, per_step_rate(p2)});
    }
    for (double gamma : {0.0, 0.5}) {
        CoefficientReport r = paper_coefficients(gamma, 3);
        BoundParams p3 = BoundParams::make(3, r.alpha_k, r.lambda_k, r.lambda_1, 2.0);
        table.rows.push_back({3, gamma, r.alpha_k, r.lambda_k, per_step_rate(p3)});
    }
    return table;
}

}  // namespace nlmc
