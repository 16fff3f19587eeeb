#include <doctest.h>

#include <cmath>

#include "nlmc/casestudy.hpp"
#include "nlmc/rng.hpp"

using namespace nlmc;

TEST_CASE("build_example: matrix entries") {
    ExampleChain zero = build_example(0.0);
    StochasticMatrix p0 = evaluate(zero.kernel, Distribution::uniform(4));
    CHECK(p0(0, 0) == 0.0);
    CHECK(p0(0, 1) == 0.0);
    CHECK(p0(0, 2) == 0.5);
    CHECK(p0(0, 3) == 0.5);
    for (double v : zero.kernel.coeff()) CHECK(v == 0.0);

    ExampleChain half = build_example(0.5);
    StochasticMatrix p1 = evaluate(half.kernel, Distribution::vertex(4, 0));
    CHECK(p1(0, 1) == 0.5);
    CHECK(p1(0, 2) == 0.0);

    // rows 2..4 never depend on the measure
    for (double gamma : {0.1, 0.3, 0.5}) {
        ExampleChain chain = build_example(gamma);
        StochasticMatrix a = evaluate(chain.kernel, Distribution::vertex(4, 0));
        StochasticMatrix b = evaluate(chain.kernel, Distribution::uniform(4));
        for (std::size_t i = 1; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) CHECK(a(i, j) == b(i, j));
    }

    CHECK_THROWS(build_example(-0.01));
    CHECK_THROWS(build_example(0.51));
}

TEST_CASE("check_three_step_symbolic: exact at gamma 0") {
    for (const auto& mu :
         {Distribution::uniform(4), Distribution::vertex(4, 2), Distribution({0.4, 0.1, 0.2, 0.3})}) {
        SymbolicCheck check = check_three_step_symbolic(0.0, mu, 1e-12);
        CHECK(check.agrees);
        CHECK(check.max_abs_diff <= 1e-15);
    }
    // published rows at gamma 0
    StochasticMatrix q = symbolic_three_step(0.0, Distribution::uniform(4));
    CHECK(q(3, 0) == 0.25);
    CHECK(q(3, 1) == 0.375);
    CHECK(q(3, 2) == 0.125);
    CHECK(q(3, 3) == 0.25);
    CHECK(q(2, 1) == 0.125);
    CHECK(q(2, 2) == 0.375);
}

TEST_CASE("check_three_step_symbolic: the nu := mu0 reading holds for gamma > 0") {
    SplitMix64 rng(5);
    for (double gamma : {0.1, 0.25, 0.5}) {
        SymbolicCheck at_uniform = check_three_step_symbolic(gamma, Distribution::uniform(4), 1e-12);
        CHECK(at_uniform.agrees);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> p(4);
            double sum = 0.0;
            for (auto& x : p) {
                x = rng.next_double() + 1e-9;
                sum += x;
            }
            for (auto& x : p) x /= sum;
            SymbolicCheck check = check_three_step_symbolic(gamma, Distribution(p, 1e-9), 1e-12);
            CHECK(check.agrees);
        }
    }
}

TEST_CASE("paper_coefficients") {
    CoefficientReport half = paper_coefficients(0.5);
    CHECK(half.k == 3);
    CHECK(half.alpha_k == 0.75);
    CHECK(half.lambda_k == 0.125);
    CHECK(half.lambda_1 == 0.5);
    CHECK(half.regime == Regime::exponential);

    CoefficientReport zero = paper_coefficients(0.0);
    CHECK(zero.alpha_k == 0.75);
    CHECK(zero.lambda_k == 0.0);
    CHECK(zero.lambda_1 == 0.0);
    CHECK(zero.regime == Regime::exponential);

    CoefficientReport one_step = paper_coefficients(0.5, 1);
    CHECK(one_step.alpha_k == 0.0);
    CHECK(one_step.lambda_k == 0.5);
    CHECK(one_step.regime == Regime::inconclusive);

    CHECK_THROWS(paper_coefficients(0.7));
    CHECK_THROWS(paper_coefficients(0.5, 2));
}

TEST_CASE("estimated coefficients land in the published ranges") {
    SimplexGrid grid = simplex_grid(4, 6);
    auto extra = sample_dirichlet(4, 200, 3);
    for (double gamma : {0.0, 0.25, 0.5}) {
        ExampleChain chain = build_example(gamma);
        double a3 = estimate_alpha(chain.kernel, 3, grid, extra);
        CHECK(a3 >= 0.75 - 5e-3);
        CHECK(a3 <= 0.75 + 0.125 * gamma + 5e-3);
        double l3 = estimate_lambda(chain.kernel, 3, grid, extra);
        CHECK(l3 == doctest::Approx(gamma / 4.0).epsilon(5e-3));
    }
    for (double gamma : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5})
        CHECK(exact_lambda1_affine(build_example(gamma).kernel) == gamma);
}

TEST_CASE("headline claim: one-step inconclusive, three-step exponential for gamma > 0") {
    SimplexGrid grid = simplex_grid(4, 5);
    auto extra = sample_dirichlet(4, 100, 9);
    for (double gamma : {0.1, 0.3, 0.5}) {
        ExampleChain chain = build_example(gamma);
        CoefficientReport k1 = estimate_coefficients(chain.kernel, 1, grid, extra, 9);
        CoefficientReport k3 = estimate_coefficients(chain.kernel, 3, grid, extra, 9);
        CHECK(k1.regime == Regime::inconclusive);
        CHECK(k3.regime == Regime::exponential);
    }
}

TEST_CASE("table1: published rates") {
    Table1 table = table1(4, 200, 1, 0);
    REQUIRE(table.rows.size() == 4);
    for (const auto& row : table.rows) {
        if (row.k == 3 && row.gamma == 0.0) CHECK(row.rate == doctest::Approx(0.629961).epsilon(1e-6));
        if (row.k == 3 && row.gamma == 0.5) CHECK(row.rate == doctest::Approx(0.721125).epsilon(1e-6));
        if (row.k == 2 && row.gamma == 0.0) CHECK(row.rate == doctest::Approx(0.707107).epsilon(1e-3));
        if (row.k == 2 && row.gamma == 0.5) CHECK(row.rate == doctest::Approx(0.866025).epsilon(1e-3));
    }
    // the k = 2 search is expected to recover alpha_2 = 0.5, lambda_2 = gamma/2
    for (const auto& row : table.rows)
        if (row.k == 2) {
            CHECK(row.alpha_k == doctest::Approx(0.5).epsilon(1e-3));
            CHECK(row.lambda_k == doctest::Approx(row.gamma / 2.0).epsilon(1e-3));
        }
}
