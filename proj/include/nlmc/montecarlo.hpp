#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nlmc/coefficients.hpp"
#include "nlmc/kernel.hpp"
#include "nlmc/measure.hpp"

namespace nlmc {

struct Trajectory {
    std::vector<int> states;  // length n + 1
    std::uint64_t seed = 0;
};

// One path of the chain conditioned on the exact law flow: X_0 ~ mu0 and
// X_{t+1} ~ row X_t of P_{mu_t}, with mu_t the deterministic flow (not an
// empirical particle measure). Bit-reproducible from (kernel, mu0, n, seed).
Trajectory simulate_path(const KernelHandle& kernel, const Distribution& mu0, int n,
                         std::uint64_t seed);

struct LLNReport {
    int n_steps = 0;
    int n_paths = 0;
    std::vector<double> g_values;      // observable per state
    std::vector<double> sample_means;  // S_n / n per path, indexed by path
    double grand_mean = 0.0;
    double sample_std = 0.0;  // std of the per-path means (ddof = 1)
    double target = 0.0;      // E_pi[g]
    double abs_error = 0.0;   // |grand_mean - target|
    double z_score = 0.0;
    std::uint64_t seed = 0;
    std::string warning;  // set when the supplied regime is inconclusive or pi did not converge
};

// Runs `paths` independent trajectories (path p seeded from
// derive_stream_seed(seed, p)), averages S_n/n = (1/n) sum_{t<n} g(X_t) and
// compares with E_pi[g], pi from find_invariant. Theorem-1 conditions are
// presumed; pass the regime from a CoefficientReport to get a recorded
// warning instead of silence when it is inconclusive.
LLNReport lln_experiment(const KernelHandle& kernel, const Distribution& mu0,
                         const std::vector<double>& g, int n, int paths, std::uint64_t seed,
                         std::optional<Regime> regime = std::nullopt, int threads = 0);

struct ConvergenceRow {
    int n;
    double abs_error;
    double sample_std;
};

// One LLN experiment per n in the increasing n_list, all under the same
// seeding discipline (path p's stream is shared across the n's, so shorter
// runs are prefixes of longer ones).
std::vector<ConvergenceRow> lln_convergence_table(const KernelHandle& kernel,
                                                  const Distribution& mu0,
                                                  const std::vector<double>& g,
                                                  const std::vector<int>& n_list, int paths,
                                                  std::uint64_t seed,
                                                  std::optional<Regime> regime = std::nullopt,
                                                  int threads = 0);

// Numerically stable order-fixed reduction used for the cross-path averages.
double pairwise_sum(const std::vector<double>& xs);

}  // namespace nlmc
