#pragma once

#include <cstdint>

#include "nlmc/coefficients.hpp"
#include "nlmc/kernel.hpp"

namespace nlmc {

// The four-state example chain, parameterized by gamma in [0, 0.5]. Only
// row 1 depends on the measure:
//   P_mu = [ 0        g*mu(1)  0.5-g*mu(1)  0.5 ]
//          [ 0.5      0.5      0            0   ]
//          [ 0.5      0        0.5          0   ]
//          [ 0        0.5      0            0.5 ]
struct ExampleChain {
    double gamma;
    AffineKernel kernel;
};

ExampleChain build_example(double gamma);

// The published symbolic three-step matrix, with its undefined nu symbols
// read as the components of the initial measure. Entries scaled by 1/16:
//   row 1: 4+g+4g*nu1,        4-g-4g*nu1
//   row 2: 4+g+2g*(nu2+nu3),  4-g-2g*(nu2+nu3)
//   row 3: 2+g+2g*(nu2+nu3),  6-g-2g*(nu2+nu3)
//   row 4: 6+g,               2-g
// (columns 2 and 3; columns 1 and 4 are 0.25 throughout).
StochasticMatrix symbolic_three_step(double gamma, const Distribution& mu);

struct SymbolicCheck {
    bool agrees = false;
    double max_abs_diff = 0.0;
};

// Compares the computed k_step_kernel(kernel, mu, 3) against
// symbolic_three_step entrywise. Confirms (or refutes) the nu := mu0 reading.
SymbolicCheck check_three_step_symbolic(double gamma, const Distribution& mu, double tol);

// The published coefficient values. k = 3: alpha = 0.75, lambda_3 = gamma/4,
// lambda_1 = gamma (exponential for the whole gamma range). k = 1: alpha = 0,
// lambda = gamma (inconclusive for gamma > 0).
CoefficientReport paper_coefficients(double gamma, int k = 3);

struct Table1 {
    struct Row {
        int k;
        double gamma;
        double alpha_k;
        double lambda_k;
        double rate;  // (1 - alpha_k + lambda_k)^(1/k)
    };
    std::vector<Row> rows;  // k in {2, 3} x gamma in {0, 0.5}
};

// Reproduces the published per-step rate table. k = 3 uses the closed-form
// coefficients above; k = 2 coefficients are not published and come from the
// grid estimators at the given resolution (+ `samples` Dirichlet points).
Table1 table1(int resolution, std::uint64_t samples = 2000, std::uint64_t seed = 1,
              int threads = 0);

}  // namespace nlmc
