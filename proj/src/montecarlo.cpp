#include "nlmc/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nlmc/invariant.hpp"
#include "nlmc/parallel.hpp"
#include "nlmc/rng.hpp"
#include "nlmc/simd.hpp"

namespace nlmc {

namespace {

int sample_index(const double* probs, std::size_t n, double u) {
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        cum += probs[i];
        if (u < cum) return static_cast<int>(i);
    }
    return static_cast<int>(n - 1);
}

// Shared read-only context for a batch of paths.
struct PathContext {
    const Distribution* mu0;
    std::vector<StochasticMatrix> transitions;  // P_{mu_t} for t = 0..n-1
};

PathContext make_context(const KernelHandle& kernel, const Distribution& mu0, int n) {
    PathContext ctx{&mu0, {}};
    ctx.transitions.reserve(static_cast<std::size_t>(n));
    Distribution mu = mu0;
    for (int t = 0; t < n; ++t) {
        StochasticMatrix p = kernel.evaluate(mu);
        if (t + 1 < n) {
            std::size_t ns = mu.size();
            std::vector<double> next(ns, 0.0);
            const auto& ops = simd::ops();
            for (std::size_t i = 0; i < ns; ++i)
                if (mu[i] != 0.0) ops.axpy(mu[i], p.row(i), next.data(), ns);
            mu = Distribution(std::move(next), 1e-9);
        }
        ctx.transitions.push_back(std::move(p));
    }
    return ctx;
}

std::vector<int> walk(const PathContext& ctx, int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<int> states;
    states.reserve(static_cast<std::size_t>(n) + 1);
    std::size_t ns = ctx.mu0->size();
    int x = sample_index(ctx.mu0->data(), ns, rng.next_double());
    states.push_back(x);
    for (int t = 0; t < n; ++t) {
        x = sample_index(ctx.transitions[static_cast<std::size_t>(t)].row(static_cast<std::size_t>(x)),
                         ns, rng.next_double());
        states.push_back(x);
    }
    return states;
}

double pairwise_sum_range(const double* xs, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += xs[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum_range(xs, half) + pairwise_sum_range(xs + half, n - half);
}

}  // namespace

double pairwise_sum(const std::vector<double>& xs) { return pairwise_sum_range(xs.data(), xs.size()); }

Trajectory simulate_path(const KernelHandle& kernel, const Distribution& mu0, int n,
                         std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("simulate_path: n must be >= 0");
    PathContext ctx = make_context(kernel, mu0, n);
    return Trajectory{walk(ctx, n, seed), seed};
}

LLNReport lln_experiment(const KernelHandle& kernel, const Distribution& mu0,
                         const std::vector<double>& g, int n, int paths, std::uint64_t seed,
                         std::optional<Regime> regime, int threads) {
    if (n < 1) throw std::invalid_argument("lln_experiment: n must be >= 1");
    if (paths < 1) throw std::invalid_argument("lln_experiment: paths must be >= 1");
    if (g.size() != mu0.size()) throw std::invalid_argument("lln_experiment: g has wrong dimension");
    for (double v : g)
        if (!std::isfinite(v)) throw std::invalid_argument("lln_experiment: g must be finite");

    LLNReport report;
    report.n_steps = n;
    report.n_paths = paths;
    report.g_values = g;
    report.seed = seed;
    if (regime && *regime == Regime::inconclusive)
        report.warning = "regime inconclusive: Theorem-1 conditions not established for this kernel";

    // S_n sums g(X_0) .. g(X_{n-1}), so the walk needs n - 1 transitions.
    PathContext ctx = make_context(kernel, mu0, n - 1);
    report.sample_means.assign(static_cast<std::size_t>(paths), 0.0);
    parallel_chunks(static_cast<std::size_t>(paths), threads, [&](int, std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            std::vector<int> states = walk(ctx, n - 1, derive_stream_seed(seed, p));
            double s = 0.0;
            for (int x : states) s += g[static_cast<std::size_t>(x)];
            report.sample_means[p] = s / static_cast<double>(n);
        }
    });

    report.grand_mean = pairwise_sum(report.sample_means) / static_cast<double>(paths);
    if (paths > 1) {
        std::vector<double> sq(report.sample_means.size());
        for (std::size_t i = 0; i < sq.size(); ++i) {
            double d = report.sample_means[i] - report.grand_mean;
            sq[i] = d * d;
        }
        report.sample_std = std::sqrt(pairwise_sum(sq) / static_cast<double>(paths - 1));
    }

    FixedPointResult fp = find_invariant(kernel, mu0);
    if (!fp.converged) {
        if (!report.warning.empty()) report.warning += "; ";
        report.warning += "invariant solve did not converge, target uses the best iterate";
    }
    report.target = simd::ops().dot(g.data(), fp.pi.data(), g.size());
    report.abs_error = std::abs(report.grand_mean - report.target);
    if (report.sample_std > 0.0)
        report.z_score = (report.grand_mean - report.target) /
                         (report.sample_std / std::sqrt(static_cast<double>(paths)));
    else if (report.abs_error > 0.0)
        report.z_score = report.grand_mean > report.target
                             ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
    return report;
}

std::vector<ConvergenceRow> lln_convergence_table(const KernelHandle& kernel,
                                                  const Distribution& mu0,
                                                  const std::vector<double>& g,
                                                  const std::vector<int>& n_list, int paths,
                                                  std::uint64_t seed, std::optional<Regime> regime,
                                                  int threads) {
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("lln_convergence_table: n_list must be increasing");
    std::vector<ConvergenceRow> rows;
    rows.reserve(n_list.size());
    for (int n : n_list) {
        LLNReport r = lln_experiment(kernel, mu0, g, n, paths, seed, regime, threads);
        rows.push_back({n, r.abs_error, r.sample_std});
    }
    return rows;
}

}  // namespace nlmc
