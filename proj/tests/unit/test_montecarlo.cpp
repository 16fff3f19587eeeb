#include <doctest.h>

#include <cmath>
#include <vector>

#include "nlmc/casestudy.hpp"
#include "nlmc/invariant.hpp"
#include "nlmc/montecarlo.hpp"

using namespace nlmc;

namespace {

KernelHandle identity_kernel(std::size_t n) {
    std::vector<double> base(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) base[i * n + i] = 1.0;
    return KernelHandle(AffineKernel(n, std::move(base), std::vector<double>(n * n * n, 0.0)));
}

// all rows equal: states are iid draws from that row
KernelHandle iid_kernel(std::vector<double> row) {
    std::size_t n = row.size();
    std::vector<double> base;
    for (std::size_t i = 0; i < n; ++i) base.insert(base.end(), row.begin(), row.end());
    return KernelHandle(AffineKernel(n, std::move(base), std::vector<double>(n * n * n, 0.0)));
}

}  // namespace

TEST_CASE("simulate_path: basics") {
    ExampleChain chain = build_example(0.5);
    Trajectory t0 = simulate_path(chain.kernel, Distribution::uniform(4), 0, 42);
    CHECK(t0.states.size() == 1);
    CHECK(t0.states[0] >= 0);
    CHECK(t0.states[0] < 4);

    Trajectory frozen = simulate_path(identity_kernel(3), Distribution({0.0, 1.0, 0.0}), 20, 7);
    REQUIRE(frozen.states.size() == 21);
    for (int x : frozen.states) CHECK(x == 1);
}

TEST_CASE("simulate_path: reproducible from the seed") {
    ExampleChain chain = build_example(0.3);
    Trajectory a = simulate_path(chain.kernel, Distribution::uniform(4), 50, 123);
    Trajectory b = simulate_path(chain.kernel, Distribution::uniform(4), 50, 123);
    CHECK(a.states == b.states);
    Trajectory c = simulate_path(chain.kernel, Distribution::uniform(4), 50, 124);
    CHECK(a.states != c.states);
}

TEST_CASE("simulate_path: marginal at n = 50 matches the law flow") {
    ExampleChain chain = build_example(0.0);
    Distribution mu0 = Distribution::vertex(4, 0);
    auto flow = law_flow(chain.kernel, mu0, 50);
    const int paths = 100000;
    std::vector<double> freq(4, 0.0);
    for (int p = 0; p < paths; ++p) {
        Trajectory t = simulate_path(chain.kernel, mu0, 50, derive_stream_seed(900, p));
        freq[static_cast<std::size_t>(t.states[50])] += 1.0 / paths;
    }
    double tv = 0.0;
    for (int i = 0; i < 4; ++i) tv += std::abs(freq[i] - flow[50][i]);
    CHECK(tv < 0.02);
}

TEST_CASE("pooled one-step transitions match the conditioning row") {
    // law consistency at t = 3, gamma = 0.5: transitions from each state x
    // follow row x of P_{mu_3} within 4 sigma binomial error
    ExampleChain chain = build_example(0.5);
    Distribution mu0 = Distribution::uniform(4);
    auto flow = law_flow(chain.kernel, mu0, 3);
    StochasticMatrix p3 = evaluate(chain.kernel, flow[3]);

    const int paths = 100000;
    std::vector<std::vector<int>> counts(4, std::vector<int>(4, 0));
    std::vector<int> visits(4, 0);
    for (int p = 0; p < paths; ++p) {
        Trajectory t = simulate_path(chain.kernel, mu0, 4, derive_stream_seed(31337, p));
        int from = t.states[3], to = t.states[4];
        ++counts[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
        ++visits[static_cast<std::size_t>(from)];
    }
    for (int x = 0; x < 4; ++x) {
        REQUIRE(visits[x] > 1000);
        for (int j = 0; j < 4; ++j) {
            double phat = static_cast<double>(counts[x][j]) / visits[x];
            double p = p3(static_cast<std::size_t>(x), static_cast<std::size_t>(j));
            double sigma = std::sqrt(std::max(p * (1 - p), 1e-12) / visits[x]);
            CHECK(std::abs(phat - p) <= 4.0 * sigma + 1e-9);
        }
    }
}

TEST_CASE("lln_experiment: constant observable") {
    ExampleChain chain = build_example(0.5);
    std::vector<double> g(4, 3.25);
    LLNReport r = lln_experiment(chain.kernel, Distribution::uniform(4), g, 100, 50, 5);
    for (double m : r.sample_means) CHECK(m == 3.25);
    CHECK(r.grand_mean == 3.25);
    CHECK(r.abs_error == 0.0);
    CHECK(r.sample_std == 0.0);
    CHECK(r.z_score == 0.0);
}

TEST_CASE("lln_experiment: indicator of state 1 at gamma 0 targets 0.25") {
    ExampleChain chain = build_example(0.0);
    std::vector<double> g{1, 0, 0, 0};
    LLNReport r = lln_experiment(chain.kernel, Distribution::uniform(4), g, 2000, 300, 11);
    CHECK(r.target == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(r.abs_error < 0.01);
    // sample means of a [0,1]-bounded observable stay in [0,1]
    for (double m : r.sample_means) {
        CHECK(m >= 0.0);
        CHECK(m <= 1.0);
    }
}

TEST_CASE("lln_experiment: error shrinks from n = 100 to n = 2000 under paired seeds") {
    ExampleChain chain = build_example(0.5);
    std::vector<double> g{0, 1, 0, 0};
    LLNReport coarse = lln_experiment(chain.kernel, Distribution::uniform(4), g, 100, 500, 21);
    LLNReport fine = lln_experiment(chain.kernel, Distribution::uniform(4), g, 2000, 500, 21);
    CHECK(fine.target == doctest::Approx(0.3125).epsilon(1e-10));
    CHECK(fine.abs_error < coarse.abs_error);
}

TEST_CASE("lln_experiment: unbiased from the invariant start") {
    ExampleChain chain = build_example(0.5);
    Distribution pi({0.25, 0.3125, 0.1875, 0.25});
    std::vector<double> g{0, 0, 1, 0};
    LLNReport r = lln_experiment(chain.kernel, pi, g, 500, 1000, 77);
    CHECK(std::abs(r.z_score) <= 4.0);
}

TEST_CASE("lln_experiment: inconclusive regime is a recorded warning, not an error") {
    ExampleChain chain = build_example(0.5);
    std::vector<double> g{1, 0, 0, 0};
    LLNReport r = lln_experiment(chain.kernel, Distribution::uniform(4), g, 50, 20, 3,
                                 Regime::inconclusive);
    CHECK(!r.warning.empty());
    LLNReport ok = lln_experiment(chain.kernel, Distribution::uniform(4), g, 50, 20, 3,
                                  Regime::exponential);
    CHECK(ok.warning.empty());
    CHECK(ok.grand_mean == r.grand_mean);
}

TEST_CASE("lln_experiment: independent of the thread count") {
    ExampleChain chain = build_example(0.3);
    std::vector<double> g{0.5, -1.0, 2.0, 0.0};
    LLNReport one = lln_experiment(chain.kernel, Distribution::uniform(4), g, 300, 101, 9,
                                   std::nullopt, 1);
    LLNReport two = lln_experiment(chain.kernel, Distribution::uniform(4), g, 300, 101, 9,
                                   std::nullopt, 2);
    CHECK(one.sample_means == two.sample_means);
    CHECK(one.grand_mean == two.grand_mean);
    CHECK(one.sample_std == two.sample_std);
}

TEST_CASE("lln_convergence_table: CLT scaling on an iid kernel") {
    KernelHandle iid = iid_kernel({0.3, 0.2, 0.4, 0.1});
    std::vector<double> g{1, 0, 0, 0};
    auto rows = lln_convergence_table(iid, Distribution({0.3, 0.2, 0.4, 0.1}), g,
                                      {100, 400, 1600}, 800, 13);
    REQUIRE(rows.size() == 3);
    // std of S_n/n shrinks about 2x per 4x n
    CHECK(rows[0].sample_std / rows[1].sample_std == doctest::Approx(2.0).epsilon(0.35));
    CHECK(rows[1].sample_std / rows[2].sample_std == doctest::Approx(2.0).epsilon(0.35));
}

TEST_CASE("lln_convergence_table: constant observable gives a zero error column") {
    ExampleChain chain = build_example(0.2);
    std::vector<double> g(4, -1.5);
    auto rows = lln_convergence_table(chain.kernel, Distribution::uniform(4), g, {10, 20, 40}, 30, 2);
    for (const auto& r : rows) {
        CHECK(r.abs_error == 0.0);
        CHECK(r.sample_std == 0.0);
    }
}

TEST_CASE("lln_convergence_table: error trend on the example chain") {
    ExampleChain chain = build_example(0.5);
    std::vector<double> g{0, 1, 0, 0};
    auto rows = lln_convergence_table(chain.kernel, Distribution::uniform(4), g,
                                      {200, 800, 3200}, 1000, 4);
    REQUIRE(rows.size() == 3);
    int improved = 0;
    if (rows[1].abs_error < rows[0].abs_error) ++improved;
    if (rows[2].abs_error < rows[1].abs_error) ++improved;
    CHECK(improved >= 1);

    CHECK_THROWS(lln_convergence_table(chain.kernel, Distribution::uniform(4), g, {100, 100}, 10, 1));
}
