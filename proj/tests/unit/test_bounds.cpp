#include <doctest.h>

#include <cmath>
#include <vector>

#include "nlmc/bounds.hpp"
#include "nlmc/rng.hpp"

using namespace nlmc;

TEST_CASE("bound_at: stated values") {
    BoundParams p = BoundParams::make(3, 0.75, 0.0, 0.0, 2.0);
    CHECK(bound_at(p, 6) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(bound_at(p, 7) == doctest::Approx(0.125).epsilon(1e-15));  // floor(7/3) = 2, (1+0)^1
    CHECK(bound_at(p, 0) == 2.0);

    // k = 1 tie: 2 / (2 + 2 lambda n) = 1 / (1 + lambda n)
    BoundParams tie = BoundParams::make(1, 0.3, 0.3, 0.3, 2.0);
    CHECK(tie.regime == Regime::linear);
    for (int n : {0, 1, 5, 100})
        CHECK(bound_at(tie, n) == doctest::Approx(1.0 / (1.0 + 0.3 * n)).epsilon(1e-15));
}

TEST_CASE("bound_at: inconclusive regime is an error") {
    BoundParams p = BoundParams::make(1, 0.2, 0.5, 0.5, 2.0);
    CHECK(p.regime == Regime::inconclusive);
    CHECK_THROWS_WITH_AS(bound_at(p, 3), doctest::Contains("inconclusive"), std::runtime_error);
    CHECK_THROWS(BoundParams::make(0, 0.5, 0.1, 0.1, 2.0));
    CHECK_THROWS(BoundParams::make(1, 1.5, 0.1, 0.1, 2.0));
    CHECK_THROWS(BoundParams::make(1, 0.5, 0.1, 0.1, 3.0));
}

TEST_CASE("bound_at: strictly decreasing along multiples of k") {
    BoundParams p = BoundParams::make(3, 0.75, 0.125, 0.5, 1.5);
    double prev = bound_at(p, 0);
    for (int block = 1; block <= 20; ++block) {
        double b = bound_at(p, 3 * block);
        CHECK(b < prev);
        prev = b;
    }
}

TEST_CASE("bound curve is capped by initial_tv * (1 + lambda_1)^(k-1)") {
    BoundParams p = BoundParams::make(3, 0.75, 0.125, 0.5, 2.0);
    double cap = 2.0 * std::pow(1.5, 2);
    for (const auto& [n, b] : bound_curve(p, 50).values) {
        CHECK(b <= cap + 1e-12);
        CHECK(std::isfinite(b));
        (void)n;
    }
}

TEST_CASE("bound_at reduces to the one-step bound at k = 1") {
    SplitMix64 rng(31);
    for (int rep = 0; rep < 50; ++rep) {
        double alpha = 0.05 + 0.9 * rng.next_double();
        double lambda = alpha * rng.next_double() * 0.99;
        int n = static_cast<int>(rng.next_u64() % 100);
        BoundParams p = BoundParams::make(1, alpha, lambda, lambda, 2.0);
        double a = bound_at(p, n);
        double b = butkovsky_one_step_bound(alpha, lambda, n);
        CHECK(std::abs(a - b) < 1e-12);
    }
    // and at the tie
    for (double lambda : {0.1, 0.25, 0.7}) {
        BoundParams p = BoundParams::make(1, lambda, lambda, lambda, 2.0);
        for (int n : {0, 1, 10, 1000})
            CHECK(bound_at(p, n) == butkovsky_one_step_bound(lambda, lambda, n));
    }
}

TEST_CASE("butkovsky_one_step_bound") {
    CHECK(butkovsky_one_step_bound(0.5, 0.0, 1) == 1.0);
    CHECK_THROWS(butkovsky_one_step_bound(0.2, 0.5, 3));
    // tie: ~ 2 / (2 lambda n) for large n
    double b = butkovsky_one_step_bound(0.25, 0.25, 1000000);
    CHECK(b == doctest::Approx(2.0 / (0.5 * 1000000)).epsilon(1e-4));
}

TEST_CASE("per_step_rate: published values") {
    CHECK(per_step_rate(BoundParams::make(3, 0.75, 0.0, 0.0, 2.0)) ==
          doctest::Approx(0.629961).epsilon(1e-6));
    CHECK(per_step_rate(BoundParams::make(3, 0.75, 0.125, 0.5, 2.0)) ==
          doctest::Approx(0.721125).epsilon(1e-6));
    CHECK(per_step_rate(BoundParams::make(2, 0.5, 0.0, 0.0, 2.0)) ==
          doctest::Approx(0.707107).epsilon(1e-6));
    CHECK(per_step_rate(BoundParams::make(3, 0.75, 0.125, 0.5, 2.0)) > 0.0);
    CHECK(per_step_rate(BoundParams::make(3, 0.75, 0.125, 0.5, 2.0)) < 1.0);
    CHECK_THROWS(per_step_rate(BoundParams::make(1, 0.3, 0.3, 0.3, 2.0)));
}

TEST_CASE("lemma_g: closed forms") {
    auto linear = [](double t) { return 0.7 * t; };
    for (double x : {1.0, 0.8, 0.5, 0.25, 0.1}) {
        double expect = 1.0 / (0.7 * x) - 1.0 / 0.7;
        CHECK(lemma_g(1.0, linear, x) == doctest::Approx(expect).epsilon(1e-8));
    }
    CHECK(lemma_g(1.0, linear, 1.0) == 0.0);
    CHECK(lemma_g(0.6, linear, 0.6) == 0.0);

    auto quadratic = [](double t) { return t * t; };
    CHECK(lemma_g(1.0, quadratic, 0.5) == doctest::Approx(1.5).epsilon(1e-8));

    CHECK_THROWS(lemma_g(1.0, linear, 0.0));
    CHECK_THROWS(lemma_g(1.0, linear, -0.2));
    CHECK_THROWS(lemma_g(0.5, linear, 0.7));
    CHECK_THROWS(lemma_g(1.5, linear, 0.7));
}

TEST_CASE("lemma_g is strictly decreasing and inverts") {
    auto psi = [](double t) { return 0.4 * t; };
    double prev = -1.0;
    for (double x : {0.9, 0.7, 0.5, 0.3, 0.1}) {
        double g = lemma_g(1.0, psi, x);
        CHECK(g > prev);
        prev = g;
    }
    for (double x : {0.9, 0.5, 0.2}) {
        double y = lemma_g(1.0, psi, x);
        CHECK(lemma_g_inverse(1.0, psi, y) == doctest::Approx(x).epsilon(1e-8));
    }
}

TEST_CASE("lemma_bound_sequence: closed form for psi(t) = lambda t") {
    for (double lambda : {0.1, 0.5, 1.0}) {
        for (double a0 : {0.1, 1.0}) {
            auto psi = [lambda](double t) { return lambda * t; };
            auto seq = lemma_bound_sequence(a0, psi, 60);
            REQUIRE(seq.size() == 61);
            CHECK(seq[0] == a0);
            for (int n = 0; n <= 60; ++n) {
                double expect = a0 / (1.0 + a0 * lambda * n);
                CHECK(seq[static_cast<std::size_t>(n)] == doctest::Approx(expect).epsilon(1e-8));
            }
        }
    }
    auto psi = [](double t) { return 0.5 * t; };
    CHECK(lemma_bound_sequence(0.7, psi, 0) == std::vector<double>{0.7});
}

TEST_CASE("lemma_bound_sequence agrees with direct inversion of g") {
    auto psi = [](double t) { return t * t; };
    auto seq = lemma_bound_sequence(1.0, psi, 10);
    for (int n : {1, 5, 10})
        CHECK(seq[static_cast<std::size_t>(n)] ==
              doctest::Approx(lemma_g_inverse(1.0, psi, n)).epsilon(1e-9));
}

TEST_CASE("lemma bound dominates the recursion a_{n+1} = a_n (1 - psi(a_n))") {
    for (double lambda : {0.1, 0.5, 1.0}) {
        auto psi = [lambda](double t) { return lambda * t; };
        double a = 1.0;
        auto seq = lemma_bound_sequence(1.0, psi, 1000);
        for (int n = 0; n <= 1000; ++n) {
            CHECK(a <= seq[static_cast<std::size_t>(n)] + 1e-12);
            a = a * (1.0 - lambda * a);
        }
    }
}
