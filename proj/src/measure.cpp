#include "nlmc/measure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nlmc/rng.hpp"
#include "nlmc/simd.hpp"

namespace nlmc {

Distribution::Distribution(std::vector<double> probs, double tol) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("Distribution: needs at least one state");
    double sum = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        double p = probs_[i];
        if (!(p >= -tol))  // also rejects NaN
            throw std::invalid_argument("Distribution: negative mass at state " + std::to_string(i));
        if (p < 0) p = 0.0;
        probs_[i] = p;
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol)
        throw std::invalid_argument("Distribution: masses sum to " + std::to_string(sum) + ", not 1");
    if (sum != 1.0)
        for (double& p : probs_) p /= sum;
}

Distribution Distribution::vertex(std::size_t n_states, std::size_t state) {
    if (state >= n_states) throw std::invalid_argument("Distribution::vertex: state out of range");
    std::vector<double> p(n_states, 0.0);
    p[state] = 1.0;
    return Distribution(std::move(p));
}

Distribution Distribution::uniform(std::size_t n_states) {
    if (n_states == 0) throw std::invalid_argument("Distribution::uniform: empty state space");
    return Distribution(std::vector<double>(n_states, 1.0 / static_cast<double>(n_states)), 1e-9);
}

bool Distribution::is_vertex() const {
    for (double p : probs_)
        if (p == 1.0) return true;
    return false;
}

double tv_distance(const Distribution& mu, const Distribution& nu) {
    if (mu.size() != nu.size())
        throw std::invalid_argument("tv_distance: dimension mismatch (" + std::to_string(mu.size()) +
                                    " vs " + std::to_string(nu.size()) + ")");
    return simd::ops().abs_diff_sum(mu.data(), nu.data(), mu.size());
}

namespace {

void enumerate_compositions(std::size_t slots, int left, std::vector<int>& prefix,
                            std::vector<Distribution>& out, int resolution) {
    if (slots == 1) {
        prefix.push_back(left);
        std::vector<double> p(prefix.size());
        for (std::size_t i = 0; i < prefix.size(); ++i)
            p[i] = static_cast<double>(prefix[i]) / static_cast<double>(resolution);
        out.emplace_back(std::move(p), 1e-9);
        prefix.pop_back();
        return;
    }
    for (int v = left; v >= 0; --v) {
        prefix.push_back(v);
        enumerate_compositions(slots - 1, left - v, prefix, out, resolution);
        prefix.pop_back();
    }
}

}  // namespace

SimplexGrid simplex_grid(std::size_t n_states, int resolution) {
    if (n_states < 1) throw std::invalid_argument("simplex_grid: n_states must be >= 1");
    if (resolution < 1) throw std::invalid_argument("simplex_grid: resolution must be >= 1");
    SimplexGrid grid;
    grid.resolution = resolution;
    std::vector<int> prefix;
    enumerate_compositions(n_states, resolution, prefix, grid.points, resolution);
    return grid;
}

std::vector<Distribution> sample_dirichlet(std::size_t n_states, std::size_t count, std::uint64_t seed) {
    if (n_states < 1) throw std::invalid_argument("sample_dirichlet: n_states must be >= 1");
    std::vector<Distribution> out;
    out.reserve(count);
    SplitMix64 rng(seed);
    std::vector<double> e(n_states);
    for (std::size_t c = 0; c < count; ++c) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n_states; ++i) {
            e[i] = -std::log1p(-rng.next_double());
            sum += e[i];
        }
        if (sum <= 0.0) {  // all 53-bit uniforms were exactly zero
            out.push_back(Distribution::uniform(n_states));
            continue;
        }
        std::vector<double> p(n_states);
        for (std::size_t i = 0; i < n_states; ++i) p[i] = e[i] / sum;
        out.emplace_back(std::move(p), 1e-9);
    }
    return out;
}

}  // namespace nlmc
