#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "hybridie/derivative_lift.hpp"
#include "hybridie/errors.hpp"
#include "hybridie/operational.hpp"
#include "oracle.hpp"

using namespace hybridie;
constexpr double e = std::numbers::e;

namespace {

// J^n Y - sum_{k=1}^n J^k Y0^(n-k) with explicit matrix powers.
Eigen::VectorXd closed_form(const Eigen::VectorXd& y, int n, const std::vector<double>& a, const BasisConfig& c,
                            const Eigen::MatrixXd& j) {
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(c.dim(), c.dim());
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(c.dim());
    for (int k = 1; k <= n; ++k) {
        power = power * j;
        sum += power * project_initial(a[n - k], c).coeffs;
    }
    return power * y - sum;
}

} // namespace

TEST_CASE("project_initial") {
    const auto y21 = project_initial(1.0, BasisConfig(1, 2));
    CHECK(y21.coeffs == Eigen::Vector2d(1, 0));
    const auto y34 = project_initial(1.0, BasisConfig(4, 3));
    for (int i = 0; i < 12; ++i) CHECK(y34.coeffs[i] == (i % 3 == 0 ? 1.0 : 0.0));
    CHECK(project_initial(0.0, BasisConfig(4, 3)).coeffs.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("lift: worked instances") {
    const BasisConfig c(1, 2);
    const auto j = build_J(c);
    const CoeffVector y(c, Eigen::Vector2d(e - 1, 9 - 3 * e));
    const InitialConditions ics(c, {1.0});

    CHECK(lift(y, 0, ics, j).coeffs == y.coeffs);

    // J (e-2, 9-3e) with J = [[0,2],[-6,6]].
    const auto d1 = lift(y, 1, ics, j);
    CHECK(d1.coeffs[0] == doctest::Approx(18 - 6 * e).epsilon(1e-13));
    CHECK(d1.coeffs[1] == doctest::Approx(66 - 24 * e).epsilon(1e-12));
    CHECK(d1.coeffs[0] == doctest::Approx(1.69031).epsilon(1e-5));
    CHECK(d1.coeffs[1] == doctest::Approx(0.761236).epsilon(1e-5));

    CHECK_THROWS_AS(lift(y, 2, ics, j), InputError);
    try {
        lift(y, 2, ics, j);
    } catch (const InputError& err) {
        CHECK(std::string(err.what()).find("needs 2 initial condition") != std::string::npos);
    }
}

TEST_CASE("lift: two steps equal one step applied twice") {
    const BasisConfig c(3, 4);
    const auto j = build_J(c);
    std::mt19937_64 rng(5);
    const auto v = oracle::random_vector(rng, 12);
    const CoeffVector y(c, Eigen::Map<const Eigen::VectorXd>(v.data(), 12));
    const InitialConditions both(c, {0.3, -1.2});
    const auto once = lift(y, 1, InitialConditions(c, {0.3}), j);
    const auto twice = lift(once, 1, InitialConditions(c, {-1.2}), j);
    CHECK((lift(y, 2, both, j).coeffs - twice.coeffs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("lift: iterated form agrees with closed form") {
    std::mt19937_64 rng(17);
    for (int q = 1; q <= 4; ++q) {
        for (int r = 1; r <= 4; ++r) {
            const BasisConfig c(q, r);
            const auto j = build_J(c);
            for (int n = 0; n <= 4; ++n) {
                const auto v = oracle::random_vector(rng, c.dim());
                const auto a = oracle::random_vector(rng, n);
                const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(v.data(), c.dim());
                const auto lifted = lift(CoeffVector(c, y), n, InitialConditions(c, a), j).coeffs;
                const Eigen::VectorXd oracle_value = closed_form(y, n, a, c, j.entries);
                CHECK((lifted - oracle_value).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, oracle_value.cwiseAbs().maxCoeff()));
            }
        }
    }
}

TEST_CASE("lift: exact for in-space polynomials") {
    std::mt19937_64 rng(23);
    for (int q = 1; q <= 3; ++q) {
        for (int r = 2; r <= 6; ++r) {
            const BasisConfig c(q, r);
            const auto j = build_J(c);
            const auto coef = oracle::random_vector(rng, r);  // y of degree r-1
            const auto y = [&](double t) { return oracle::eval(coef, t); };
            oracle::Poly dcoef(r - 1, 0.0);
            for (int k = 1; k < r; ++k) dcoef[k - 1] = k * coef[k];
            const auto dy = [&](double t) { return oracle::eval(dcoef, t); };
            const auto lifted = lift(project_function(c, y), 1, InitialConditions(c, {y(0.0)}), j);
            CHECK((lifted.coeffs - project_function(c, dy).coeffs).cwiseAbs().maxCoeff() <= 1e-9);
        }
    }
}
