#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nlmc {

// Probability vector over a finite state space. Immutable after
// construction: entries are non-negative and sum to 1 (inputs whose sum is
// within `tol` of 1 are renormalized by their sum; anything further off is
// rejected).
class Distribution {
public:
    explicit Distribution(std::vector<double> probs, double tol = 1e-12);

    static Distribution vertex(std::size_t n_states, std::size_t state);
    static Distribution uniform(std::size_t n_states);

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }
    const double* data() const { return probs_.data(); }

    // unit mass on a single state
    bool is_vertex() const;

    bool operator==(const Distribution& other) const { return probs_ == other.probs_; }

private:
    std::vector<double> probs_;
};

// Total variation distance in the mass-2 convention: sum_i |mu_i - nu_i|,
// i.e. twice the sup over events. Range [0, 2].
double tv_distance(const Distribution& mu, const Distribution& nu);

// The lattice of probability vectors with denominator `resolution`,
// vertices included. Search domain for the suprema in the coefficient
// estimators.
struct SimplexGrid {
    int resolution = 0;
    std::vector<Distribution> points;
};

// All C(resolution + n_states - 1, n_states - 1) lattice points, in
// lexicographic order of the integer compositions.
SimplexGrid simplex_grid(std::size_t n_states, int resolution);

// `count` points sampled uniformly from the simplex (flat Dirichlet via
// normalized exponentials). Deterministic given the seed.
std::vector<Distribution> sample_dirichlet(std::size_t n_states, std::size_t count, std::uint64_t seed);

}  // namespace nlmc
