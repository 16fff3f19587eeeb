#include "nlmc/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nlmc/parallel.hpp"
#include "nlmc/simd.hpp"

namespace nlmc {

std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::exponential: return "exponential";
        case Regime::linear: return "linear";
        case Regime::inconclusive: return "inconclusive";
    }
    return "?";
}

Regime regime_from_string(std::string_view s) {
    if (s == "exponential") return Regime::exponential;
    if (s == "linear") return Regime::linear;
    if (s == "inconclusive") return Regime::inconclusive;
    throw std::invalid_argument("unknown regime name");
}

Regime classify_regime(double alpha_k, double lambda_k, double tie_tol) {
    if (std::abs(lambda_k - alpha_k) <= tie_tol) return Regime::linear;
    return lambda_k < alpha_k ? Regime::exponential : Regime::inconclusive;
}

namespace {

struct SearchSet {
    std::vector<const Distribution*> points;
    std::vector<char> vertex;  // unit mass on one state
};

SearchSet collect_points(const SimplexGrid& grid, const std::vector<Distribution>& extra) {
    SearchSet set;
    set.points.reserve(grid.points.size() + extra.size());
    for (const auto& p : grid.points) set.points.push_back(&p);
    for (const auto& p : extra) set.points.push_back(&p);
    set.vertex.resize(set.points.size());
    for (std::size_t i = 0; i < set.points.size(); ++i) set.vertex[i] = set.points[i]->is_vertex();
    return set;
}

std::vector<StochasticMatrix> precompute_kernels(const KernelHandle& kernel, int k,
                                                 const SearchSet& set, int threads) {
    std::vector<StochasticMatrix> qs(set.points.size(), StochasticMatrix(kernel.n_states()));
    std::exception_ptr error;
    std::mutex error_mutex;
    parallel_chunks(set.points.size(), threads, [&](int, std::size_t begin, std::size_t end) {
        try {
            for (std::size_t i = begin; i < end; ++i)
                qs[i] = k_step_kernel(kernel, *set.points[i], k);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);
    return qs;
}

// Unordered measure pairs (i <= j) flattened to [0, P(P+1)/2); chunk
// boundaries decoded by binary search on the row offsets.
struct PairSpace {
    std::size_t n_points = 0;
    std::size_t total() const { return n_points * (n_points + 1) / 2; }
    std::size_t row_offset(std::size_t i) const { return i * n_points - i * (i - 1) / 2; }
    std::pair<std::size_t, std::size_t> decode(std::size_t p) const {
        std::size_t lo = 0, hi = n_points;
        while (hi - lo > 1) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (row_offset(mid) <= p) lo = mid;
            else hi = mid;
        }
        return {lo, lo + (p - row_offset(lo))};
    }
};

}  // namespace

AlphaEstimate estimate_alpha_detailed(const KernelHandle& kernel, int k, const SimplexGrid& grid,
                                      const std::vector<Distribution>& extra_samples,
                                      const SearchConfig& cfg) {
    if (k < 1) throw std::invalid_argument("estimate_alpha: k must be >= 1");
    SearchSet set = collect_points(grid, extra_samples);
    if (set.points.empty()) throw std::invalid_argument("estimate_alpha: empty search set");
    const std::size_t n = kernel.n_states();
    const auto qs = precompute_kernels(kernel, k, set, cfg.threads);
    const auto& ops = simd::ops();

    PairSpace pairs{set.points.size()};
    int workers = resolve_threads(cfg.threads);
    struct ChunkMax {
        double value = -1.0;
        std::size_t pair_index = 0;
    };
    std::vector<ChunkMax> chunk_max(std::max(1, workers));
    parallel_chunks(pairs.total(), workers, [&](int chunk, std::size_t begin, std::size_t end) {
        double best = -1.0;
        std::size_t best_pair = 0;
        auto [i, j] = pairs.decode(begin);
        for (std::size_t p = begin; p < end; ++p) {
            const StochasticMatrix& qa = qs[i];
            const StochasticMatrix& qb = qs[j];
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) {
                    double tv = ops.abs_diff_sum(qa.row(x), qb.row(y), n);
                    if (tv > best) {
                        best = tv;
                        best_pair = p;
                    }
                }
            if (++j == pairs.n_points) {
                ++i;
                j = i;
            }
        }
        chunk_max[static_cast<std::size_t>(chunk)] = {best, best_pair};
    });

    ChunkMax overall;
    for (const auto& c : chunk_max)
        if (c.value > overall.value) overall = c;  // chunk order breaks exact ties

    auto [bi, bj] = pairs.decode(overall.pair_index);
    AlphaEstimate est;
    est.alpha = 1.0 - overall.value / 2.0;
    est.evaluations = pairs.total() * n * n;
    est.extremum_on_vertices = set.vertex[bi] && set.vertex[bj];
    return est;
}

double estimate_alpha(const KernelHandle& kernel, int k, const SimplexGrid& grid,
                      const std::vector<Distribution>& extra_samples, const SearchConfig& cfg) {
    return estimate_alpha_detailed(kernel, k, grid, extra_samples, cfg).alpha;
}

LambdaEstimate estimate_lambda_detailed(const KernelHandle& kernel, int k, const SimplexGrid& grid,
                                        const std::vector<Distribution>& extra_samples, double min_sep,
                                        const SearchConfig& cfg) {
    if (k < 1) throw std::invalid_argument("estimate_lambda: k must be >= 1");
    if (!(min_sep > 0)) throw std::invalid_argument("estimate_lambda: min_sep must be > 0");
    SearchSet set = collect_points(grid, extra_samples);
    if (set.points.empty()) throw std::invalid_argument("estimate_lambda: empty search set");
    const std::size_t n = kernel.n_states();
    const auto qs = precompute_kernels(kernel, k, set, cfg.threads);
    const auto& ops = simd::ops();

    PairSpace pairs{set.points.size()};
    int workers = resolve_threads(cfg.threads);
    struct ChunkResult {
        double best = -1.0;
        std::uint64_t admissible = 0;
    };
    std::vector<ChunkResult> chunk_res(std::max(1, workers));
    parallel_chunks(pairs.total(), workers, [&](int chunk, std::size_t begin, std::size_t end) {
        ChunkResult res;
        auto [i, j] = pairs.decode(begin);
        for (std::size_t p = begin; p < end; ++p) {
            if (i != j) {
                double sep = ops.abs_diff_sum(set.points[i]->data(), set.points[j]->data(), n);
                if (sep >= min_sep) {
                    const StochasticMatrix& qa = qs[i];
                    const StochasticMatrix& qb = qs[j];
                    for (std::size_t x = 0; x < n; ++x) {
                        double ratio = ops.abs_diff_sum(qa.row(x), qb.row(x), n) / sep;
                        if (ratio > res.best) res.best = ratio;
                    }
                    res.admissible += n;
                }
            }
            if (++j == pairs.n_points) {
                ++i;
                j = i;
            }
        }
        chunk_res[static_cast<std::size_t>(chunk)] = res;
    });

    LambdaEstimate est;
    double best = -1.0;
    for (const auto& c : chunk_res) {
        best = std::max(best, c.best);
        est.evaluations += c.admissible;
    }
    if (est.evaluations == 0)
        throw std::runtime_error("estimate_lambda: no measure pair with tv >= min_sep");
    est.lambda = best;
    return est;
}

double estimate_lambda(const KernelHandle& kernel, int k, const SimplexGrid& grid,
                       const std::vector<Distribution>& extra_samples, double min_sep,
                       const SearchConfig& cfg) {
    return estimate_lambda_detailed(kernel, k, grid, extra_samples, min_sep, cfg).lambda;
}

double exact_lambda1_affine(const AffineKernel& kernel) {
    const std::size_t n = kernel.n_states();
    double best = 0.0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                double sum = 0.0;
                for (std::size_t j = 0; j < n; ++j)
                    sum += std::abs(kernel.coeff_at(x, j, a) - kernel.coeff_at(x, j, b));
                best = std::max(best, 0.5 * sum);
            }
    return best;
}

CoefficientReport estimate_coefficients(const KernelHandle& kernel, int k, const SimplexGrid& grid,
                                        const std::vector<Distribution>& extra_samples,
                                        std::uint64_t seed, const SearchConfig& cfg) {
    CoefficientReport report;
    report.k = k;
    AlphaEstimate alpha = estimate_alpha_detailed(kernel, k, grid, extra_samples, cfg);
    LambdaEstimate lambda = estimate_lambda_detailed(kernel, k, grid, extra_samples, cfg.min_sep, cfg);
    report.alpha_k = alpha.alpha;
    report.lambda_k = lambda.lambda;
    if (kernel.is_affine())
        report.lambda_1 = exact_lambda1_affine(*kernel.affine());
    else if (k == 1)
        report.lambda_1 = lambda.lambda;
    else
        report.lambda_1 = estimate_lambda_detailed(kernel, 1, grid, extra_samples, cfg.min_sep, cfg).lambda;
    report.regime = classify_regime(report.alpha_k, report.lambda_k, cfg.tie_tol);
    report.meta.grid_resolution = grid.resolution;
    report.meta.sample_count = extra_samples.size();
    report.meta.seed = seed;
    report.meta.evaluations = alpha.evaluations + lambda.evaluations;
    report.meta.tie_tol = cfg.tie_tol;
    report.meta.min_sep = cfg.min_sep;
    report.meta.alpha_extremum_on_vertices = alpha.extremum_on_vertices;
    return report;
}

}  // namespace nlmc
