#include "doctest.h"

#include <cmath>
#include <numeric>

#include "hybridie/errors.hpp"
#include "hybridie/legendre.hpp"
#include "oracle.hpp"

using hybridie::gauss_rule;
using hybridie::legendre;

TEST_CASE("legendre: low orders") {
    CHECK(legendre(0, 0.37) == 1.0);
    CHECK(legendre(1, 0.5) == 0.5);
    CHECK(legendre(4, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(legendre(2, 0.0) == -0.5);
    for (int m = 0; m < 12; ++m) CHECK(legendre(m, -1.0) == doctest::Approx(m % 2 ? -1.0 : 1.0).epsilon(1e-14));
}

TEST_CASE("legendre: recursion agrees with factorial sum") {
    for (int m = 0; m <= 10; ++m) {
        const oracle::Poly p = oracle::legendre_poly(m);
        for (int i = 0; i <= 100; ++i) {
            const double x = -1.0 + 2.0 * i / 100.0;
            CHECK(std::abs(legendre(m, x) - oracle::eval(p, x)) <= 1e-11);
        }
    }
}

TEST_CASE("legendre: derivative matches the oracle polynomial") {
    for (int m = 0; m <= 8; ++m) {
        const oracle::Poly p = oracle::legendre_poly(m);
        oracle::Poly dp(std::max<std::size_t>(1, p.size() - 1), 0.0);
        for (std::size_t k = 1; k < p.size(); ++k) dp[k - 1] = k * p[k];
        for (double x : {-1.0, -0.7, 0.0, 0.33, 1.0})
            CHECK(hybridie::legendre_with_derivative(m, x).derivative == doctest::Approx(oracle::eval(dp, x)).epsilon(1e-12));
    }
}

TEST_CASE("gauss_rule: small rules") {
    const auto one = gauss_rule(1);
    REQUIRE(one.size() == 1);
    CHECK(one.nodes[0] == 0.0);
    CHECK(one.weights[0] == doctest::Approx(2.0).epsilon(1e-15));

    // Two-point rule: exact on 1, x, x^2, x^3 forces nodes +-1/sqrt(3), unit weights.
    const auto two = gauss_rule(2);
    CHECK(two.nodes[0] == doctest::Approx(-0.5773502691896257).epsilon(1e-15));
    CHECK(two.nodes[1] == doctest::Approx(0.5773502691896257).epsilon(1e-15));
    CHECK(two.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(two.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(gauss_rule(0), hybridie::InputError);
}

TEST_CASE("gauss_rule: structural invariants and exactness") {
    for (int n = 1; n <= 40; ++n) {
        const auto rule = gauss_rule(n);
        const double wsum = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
        CHECK(std::abs(wsum - 2.0) <= 1e-13);
        for (int i = 0; i < n; ++i) {
            CHECK(rule.weights[i] > 0.0);
            CHECK(std::abs(rule.nodes[i] + rule.nodes[n - 1 - i]) <= 1e-14);
            if (i > 0) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
        }
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
            const double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1.0);
            CHECK(std::abs(s - exact) <= 1e-12 * std::max(1.0, std::abs(exact)));
        }
    }
}

TEST_CASE("legendre: orthogonality with a 10-point rule") {
    const auto rule = gauss_rule(10);
    for (int i = 0; i <= 8; ++i) {
        for (int j = 0; j <= 8; ++j) {
            double s = 0.0;
            for (std::size_t a = 0; a < rule.size(); ++a) s += rule.weights[a] * legendre(i, rule.nodes[a]) * legendre(j, rule.nodes[a]);
            const double expected = (i == j) ? 2.0 / (2.0 * i + 1.0) : 0.0;
            CHECK(std::abs(s - expected) <= 1e-12);
        }
    }
}
