#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "hybridie/errors.hpp"
#include "hybridie/legendre.hpp"
#include "hybridie/solver.hpp"
#include "oracle.hpp"

using namespace hybridie;
constexpr double e = std::numbers::e;

namespace {

AssembledSystem example1(int q, int r) {
    const BasisConfig c(q, r);
    return assemble(EquationKind::fredholm, 1.0, project_kernel(c, [](double t, double s) { return std::exp(t - s); }),
                    project_function(c, [](double t) { return std::exp(t + 1); }), 0, 1, InitialConditions(c, {1.0}));
}

AssembledSystem example2() {
    const BasisConfig c(4, 3);
    return assemble(EquationKind::volterra, 1.0, project_kernel(c, [](double t, double s) { return std::sin(t - s); }),
                    project_function(c, [](double t) { return 2 * t * t * t + t * t - 12 * t + 12 * std::sin(t); }), 0,
                    1, InitialConditions(c, {0.0}));
}

CoeffVector vec(const BasisConfig& c, const std::vector<double>& v) {
    return {c, Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()))};
}

const std::vector<double> kExample1Y34{1.1361,  0.141865, 0.00590841, 1.45878, 0.182158, 0.00758655,
                                       1.87312, 0.233896, 0.00974132, 2.40513, 0.300328, 0.0125081};
const std::vector<double> kExample2Y{0.0208333, 0.0312487, 0.0104375, 0.145833, 0.0937492, 0.0104781,
                                     0.395833,  0.15625,   0.0105145, 0.770834, 0.218753,  0.010543};

} // namespace

TEST_CASE("assemble validates its inputs") {
    const BasisConfig c(2, 2);
    const auto k = OperatorMatrix::zero(c);
    const auto f = CoeffVector::zero(c);
    CHECK_THROWS_AS(assemble(EquationKind::fredholm, 1.0, k, f, 0, 2, InitialConditions(c, {1.0})), InputError);
    CHECK_THROWS_AS(assemble(EquationKind::fredholm, 1.0, OperatorMatrix::zero(BasisConfig(2, 3)), f, 0, 0,
                             InitialConditions(c, {})),
                    InputError);
    CHECK_NOTHROW(assemble(EquationKind::volterra, 1.0, k, f, 1, 2, InitialConditions(c, {1.0, 2.0})));
}

TEST_CASE("residuals with a zero scalar") {
    std::mt19937_64 rng(2);
    for (auto kind : {EquationKind::fredholm, EquationKind::volterra}) {
        const BasisConfig c(3, 3);
        const auto fv = oracle::random_vector(rng, 9), yv = oracle::random_vector(rng, 9);
        const auto sys = assemble(kind, 0.0, project_kernel(c, [](double t, double s) { return t + s; }), vec(c, fv), 1,
                                  0, InitialConditions(c, {0.5}));
        const auto y = vec(c, yv);
        CHECK((residual(sys, y).coeffs - (y.coeffs - sys.forcing.coeffs)).cwiseAbs().maxCoeff() == 0.0);
        CHECK(residual(sys, sys.forcing).coeffs.cwiseAbs().maxCoeff() == 0.0);
    }
    const auto sys = example2();
    // C~(0) = 0 with zero initial conditions.
    CHECK(residual_volterra(sys, CoeffVector::zero(sys.config())).coeffs == -sys.forcing.coeffs);
    CHECK_THROWS_AS(residual_fredholm(sys, sys.forcing), InputError);
}

TEST_CASE("residual at reference coefficient vectors") {
    // Projection of exp(t) is not the discrete solution; the residual is
    // method-truncation sized (measured 0.0522).
    const auto s1 = example1(1, 2);
    const double r1 = residual(s1, vec(s1.config(), {e - 1, 9 - 3 * e})).coeffs.cwiseAbs().maxCoeff();
    CHECK(r1 <= 5.5e-2);
    CHECK(r1 >= 4e-2);

    // Published Example 2 vector, rounded to six digits (measured 2.5e-6).
    const auto s2 = example2();
    CHECK(residual(s2, vec(s2.config(), kExample2Y)).coeffs.cwiseAbs().maxCoeff() <= 1e-3);
}

TEST_CASE("forward Jacobian agrees with central differences") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 6; ++trial) {
        const BasisConfig c(1 + trial % 3, 2 + trial % 2);
        const auto kind = trial % 2 ? EquationKind::volterra : EquationKind::fredholm;
        const auto sys = assemble(kind, 0.7, project_kernel(c, [](double t, double s) { return std::cos(t - 2 * s); }),
                                  project_function(c, [](double t) { return 1 + t; }), trial % 2, 1,
                                  InitialConditions(c, {0.8}));
        const auto jf = forward_jacobian(sys, sys.forcing, Execution::serial);
        Eigen::MatrixXd jc(c.dim(), c.dim());
        for (int col = 0; col < c.dim(); ++col) {
            const double h = 1e-5;
            Eigen::VectorXd plus = sys.forcing.coeffs, minus = sys.forcing.coeffs;
            plus[col] += h;
            minus[col] -= h;
            jc.col(col) = (residual(sys, CoeffVector(c, plus)).coeffs - residual(sys, CoeffVector(c, minus)).coeffs) / (2 * h);
        }
        CHECK((jf - jc).cwiseAbs().maxCoeff() <= 1e-5 * std::max(1.0, jc.cwiseAbs().maxCoeff()));
        CHECK(jf == forward_jacobian(sys, sys.forcing, Execution::parallel));
    }
}

TEST_CASE("solve: Example 1, r=2, q=1") {
    const auto sys = example1(1, 2);
    const auto rep = solve(sys);
    REQUIRE(rep.converged);
    CHECK(rep.iterations < 10);
    // Discrete solution; its error at t=0 is the reference value 0.120825.
    CHECK(std::abs(rep.y.coeffs[0] - rep.y.coeffs[1] - 1.0) == doctest::Approx(0.120825).epsilon(1e-5));
    CHECK(residual(sys, rep.y).coeffs.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("solve: Example 1, r=3, q=4") {
    const auto sys = example1(4, 3);
    const auto rep = solve(sys);
    REQUIRE(rep.converged);
    for (int i = 0; i < 12; ++i) CHECK(std::abs(rep.y.coeffs[i] - kExample1Y34[i]) <= 5e-4);
    CHECK(residual(sys, rep.y).coeffs.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("solve: Example 2") {
    const auto sys = example2();
    const auto rep = solve(sys);
    REQUIRE(rep.converged);
    for (int i = 0; i < 12; ++i) CHECK(std::abs(rep.y.coeffs[i] - kExample2Y[i]) <= 5e-4);
    CHECK(residual(sys, rep.y).coeffs.cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("solve: zero scalar returns F immediately") {
    for (auto kind : {EquationKind::fredholm, EquationKind::volterra}) {
        const BasisConfig c(3, 3);
        const auto sys = assemble(kind, 0.0, project_kernel(c, [](double t, double s) { return std::exp(t * s); }),
                                  project_function(c, [](double t) { return std::sin(3 * t); }), 0, 1,
                                  InitialConditions(c, {0.0}));
        const auto rep = solve(sys);
        CHECK(rep.converged);
        CHECK(rep.iterations <= 1);
        CHECK(rep.y.coeffs == sys.forcing.coeffs);
    }
}

TEST_CASE("solve: iteration cap reports non-convergence") {
    const auto sys = example1(4, 3);
    SolveOptions opts;
    opts.max_iter = 1;
    opts.tol = 1e-300;
    const auto rep = solve(sys, opts);
    CHECK_FALSE(rep.converged);
    CHECK(rep.residual_norm > 0.0);
}

TEST_CASE("constant kernel: residuals match brute-force quadrature") {
    // With g = c and m = n = 0 the integral term is c * int y^2 over [0,1]
    // (Fredholm) or [0,t] (Volterra). Volterra truncation is exact only when
    // y^2 and its running integral stay in the space, so Y is drawn from
    // orders m <= d with 2d + 1 <= r - 1.
    const auto rule = gauss_rule(200);
    std::mt19937_64 rng(31);
    const double cval = 1.7, scalar = 0.6;
    for (int q = 1; q <= 3; ++q) {
        for (int r : {3, 5}) {
            const BasisConfig c(q, r);
            const auto kern = project_kernel(c, [cval](double, double) { return cval; });
            const auto f = project_function(c, [](double t) { return std::cos(t); });

            // Fredholm, fully random Y.
            {
                const auto sys = assemble(EquationKind::fredholm, scalar, kern, f, 0, 0, InitialConditions(c, {}));
                const auto y = vec(c, oracle::random_vector(rng, c.dim()));
                double integral = 0.0;
                for (std::size_t a = 0; a < rule.size(); ++a) {
                    // 200 Gauss points per block on [0,1).
                    for (int k = 0; k < q; ++k) {
                        const double t = (rule.nodes[a] + 2 * k + 1) / (2.0 * q);
                        const double yt = reconstruct(y, t);
                        integral += rule.weights[a] / (2.0 * q) * yt * yt;
                    }
                }
                Eigen::VectorXd expected = y.coeffs - f.coeffs;
                for (int k = 0; k < q; ++k) expected[c.index(k, 0)] += scalar * cval * integral;
                CHECK((residual(sys, y).coeffs - expected).cwiseAbs().maxCoeff() <= 1e-8);
            }

            // Volterra, low-order Y.
            {
                const int d = (r - 2) / 2;
                const auto sys = assemble(EquationKind::volterra, scalar, kern, f, 0, 0, InitialConditions(c, {}));
                Eigen::VectorXd yv = Eigen::VectorXd::Zero(c.dim());
                for (int k = 0; k < q; ++k) {
                    const auto v = oracle::random_vector(rng, d + 1);
                    for (int m = 0; m <= d; ++m) yv[c.index(k, m)] = v[m];
                }
                const CoeffVector y(c, yv);
                const auto running = [&](double t) {
                    // Split at block edges so each piece is a smooth polynomial.
                    double acc = 0.0;
                    const int kt = c.block_of(t);
                    for (int k = 0; k <= kt; ++k) {
                        const double lo = static_cast<double>(k) / q;
                        const double hi = (k == kt) ? t : static_cast<double>(k + 1) / q;
                        for (std::size_t a = 0; a < rule.size(); ++a) {
                            const double s = lo + 0.5 * (hi - lo) * (rule.nodes[a] + 1.0);
                            const double ys = reconstruct(y, s);
                            acc += 0.5 * (hi - lo) * rule.weights[a] * ys * ys;
                        }
                    }
                    return acc;
                };
                const auto integral_coeffs = project_function(c, running);
                const Eigen::VectorXd expected = y.coeffs - f.coeffs + scalar * cval * integral_coeffs.coeffs;
                CHECK((residual(sys, y).coeffs - expected).cwiseAbs().maxCoeff() <= 1e-8);
            }
        }
    }
}

TEST_CASE("error_bound") {
    CHECK(error_bound(1, e) == doctest::Approx(0.169893).epsilon(1e-5));
    CHECK(error_bound(2, e) == doctest::Approx(0.01416).epsilon(3e-4));
    CHECK(error_bound(2, 2.0) == doctest::Approx(0.0104167).epsilon(1e-5));
    CHECK(error_bound(4, 0.0) == 0.0);
    for (int mu = 0; mu < 10; ++mu) CHECK(error_bound(mu + 1, 1.5) < error_bound(mu, 1.5));
    CHECK_THROWS_AS(error_bound(1, -1.0), InputError);
}

TEST_CASE("estimate_derivative_max") {
    const auto exp_fn = [](double t) { return std::exp(t); };
    for (int order = 1; order <= 3; ++order)
        CHECK(estimate_derivative_max(exp_fn, order) == doctest::Approx(e).epsilon(1e-6));
    CHECK(estimate_derivative_max([](double t) { return t * t; }, 2) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(std::abs(estimate_derivative_max([](double t) { return t * t; }, 3)) <= 1e-6);
}
