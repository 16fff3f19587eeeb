#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "nlmc/kernel.hpp"
#include "nlmc/measure.hpp"

namespace nlmc {

// lambda < alpha: exponential rate; lambda = alpha (within tie tolerance):
// linear 1/n rate; lambda > alpha: the theorem gives no bound.
enum class Regime { exponential, linear, inconclusive };

std::string_view to_string(Regime r);
Regime regime_from_string(std::string_view s);

Regime classify_regime(double alpha_k, double lambda_k, double tie_tol);

struct SearchConfig {
    int threads = 0;          // 0 = all cores
    double min_sep = 1e-6;    // measure pairs closer than this are skipped in the ratio
    double tie_tol = 1e-9;
};

struct SearchMeta {
    int grid_resolution = 0;
    std::uint64_t sample_count = 0;
    std::uint64_t seed = 0;
    std::uint64_t evaluations = 0;  // (mu, nu, x, y) tuples inspected
    double tie_tol = 1e-9;
    double min_sep = 1e-6;
    // The measure pair attaining the alpha extremum was a pair of simplex
    // vertices. When false the supremum may sit strictly inside the simplex
    // and the grid value is only a sampled bound.
    bool alpha_extremum_on_vertices = false;
};

struct CoefficientReport {
    int k = 1;
    double alpha_k = 0.0;
    double lambda_k = 0.0;
    double lambda_1 = 0.0;
    Regime regime = Regime::inconclusive;
    SearchMeta meta;
};

struct AlphaEstimate {
    double alpha = 0.0;
    std::uint64_t evaluations = 0;
    bool extremum_on_vertices = false;
};

struct LambdaEstimate {
    double lambda = 0.0;
    std::uint64_t evaluations = 0;  // admissible (mu, nu, x) tuples
};

// Sampled version of the k-step Markov-Dobrushin coefficient: 1 - S/2 where
// S is the max TV distance between any two rows of Q_mu and Q_nu over all
// measure pairs in grid + extra_samples. The sampled sup is <= the true sup,
// so this is an UPPER estimate of the true alpha_k.
AlphaEstimate estimate_alpha_detailed(const KernelHandle& kernel, int k, const SimplexGrid& grid,
                                      const std::vector<Distribution>& extra_samples,
                                      const SearchConfig& cfg = {});
double estimate_alpha(const KernelHandle& kernel, int k, const SimplexGrid& grid,
                      const std::vector<Distribution>& extra_samples, const SearchConfig& cfg = {});

// Sampled measure-Lipschitz coefficient: max over measure pairs with
// tv(mu,nu) >= min_sep and states x of tv(Q_mu(x,.), Q_nu(x,.)) / tv(mu,nu).
// A LOWER estimate of the true lambda_k.
LambdaEstimate estimate_lambda_detailed(const KernelHandle& kernel, int k, const SimplexGrid& grid,
                                        const std::vector<Distribution>& extra_samples, double min_sep,
                                        const SearchConfig& cfg = {});
double estimate_lambda(const KernelHandle& kernel, int k, const SimplexGrid& grid,
                       const std::vector<Distribution>& extra_samples, double min_sep = 1e-6,
                       const SearchConfig& cfg = {});

// Exact lambda_1 for affine kernels: the TV difference map is linear in
// mu - nu, whose normalized extreme points are (delta_a - delta_b)/2, so the
// sup is attained on vertex pairs:
//   max over x, a != b of (1/2) sum_j |coeff[x][j][a] - coeff[x][j][b]|.
double exact_lambda1_affine(const AffineKernel& kernel);

// One-call estimation pipeline: alpha_k, lambda_k, lambda_1 (exact when the
// kernel is affine, otherwise the k=1 grid estimate) and the regime.
CoefficientReport estimate_coefficients(const KernelHandle& kernel, int k, const SimplexGrid& grid,
                                        const std::vector<Distribution>& extra_samples,
                                        std::uint64_t seed, const SearchConfig& cfg = {});

}  // namespace nlmc
