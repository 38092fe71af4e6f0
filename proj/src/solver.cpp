#include "hybridie/solver.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hybridie/errors.hpp"

namespace hybridie {

const char* to_string(EquationKind kind) {
    return kind == EquationKind::fredholm ? "fredholm" : "volterra";
}

AssembledSystem assemble(EquationKind kind, double scalar, OperatorMatrix kernel, CoeffVector forcing, int m, int n,
                         InitialConditions ics) {
    const BasisConfig config = forcing.config;
    if (!same_space(kernel.config, config) || !same_space(ics.config, config))
        throw InputError("assemble: kernel, forcing and initial conditions must share one basis");
    if (m < 0 || n < 0) throw InputError("assemble: derivative orders must be non-negative");
    if (!std::isfinite(scalar)) throw InputError("assemble: scalar is not finite");
    const std::size_t needed = static_cast<std::size_t>(std::max(m, n));
    if (ics.size() < needed) {
        throw InputError("assemble: derivative orders (m=" + std::to_string(m) + ", n=" + std::to_string(n) +
                         ") need " + std::to_string(needed) + " initial condition(s), got " +
                         std::to_string(ics.size()));
    }
    return AssembledSystem{kind,
                           scalar,
                           std::move(kernel),
                           std::move(forcing),
                           m,
                           n,
                           std::move(ics),
                           TripleTensor(config),
                           build_P(config),
                           build_L(config),
                           build_J(config)};
}

CoeffVector residual_fredholm(const AssembledSystem& sys, const CoeffVector& y) {
    if (sys.kind != EquationKind::fredholm) throw InputError("residual_fredholm: system is not Fredholm");
    const CoeffVector ym = lift(y, sys.m, sys.ics, sys.J);
    const CoeffVector yn = lift(y, sys.n, sys.ics, sys.J);
    const OperatorMatrix cm = coeff_matrix(ym, sys.tensor);
    Eigen::VectorXd r = y.coeffs - sys.forcing.coeffs;
    r.noalias() += sys.scalar * (sys.kernel.entries * (cm.entries * (sys.L.entries * yn.coeffs)));
    return {y.config, std::move(r)};
}

CoeffVector residual_volterra(const AssembledSystem& sys, const CoeffVector& y) {
    if (sys.kind != EquationKind::volterra) throw InputError("residual_volterra: system is not Volterra");
    const CoeffVector ym = lift(y, sys.m, sys.ics, sys.J);
    const CoeffVector yn = lift(y, sys.n, sys.ics, sys.J);
    const OperatorMatrix cm = coeff_matrix(ym, sys.tensor);
    const OperatorMatrix cn = coeff_matrix(yn, sys.tensor);
    const OperatorMatrix s{y.config, sys.kernel.entries * cm.entries * cn.entries * sys.P.entries};
    const CoeffVector hat = hat_vector(s, sys.tensor);
    return {y.config, y.coeffs + sys.scalar * hat.coeffs - sys.forcing.coeffs};
}

CoeffVector residual(const AssembledSystem& sys, const CoeffVector& y) {
    return sys.kind == EquationKind::fredholm ? residual_fredholm(sys, y) : residual_volterra(sys, y);
}

namespace {

double fd_step(double v) {
    return 1e-7 * std::max(1.0, std::abs(v));
}

// One Jacobian column; returns an error message rather than throwing so it
// can run inside an OpenMP region.
std::optional<std::string> jacobian_column(const AssembledSystem& sys, const CoeffVector& y,
                                           const Eigen::VectorXd& base, int col, Eigen::MatrixXd& jac) {
    try {
        Eigen::VectorXd shifted = y.coeffs;
        const double h = fd_step(y.coeffs[col]);
        shifted[col] += h;
        const CoeffVector r = residual(sys, CoeffVector(y.config, std::move(shifted)));
        jac.col(col) = (r.coeffs - base) / h;
        return std::nullopt;
    } catch (const std::exception& e) {
        return std::string(e.what());
    }
}

} // namespace

Eigen::MatrixXd forward_jacobian(const AssembledSystem& sys, const CoeffVector& y, Execution exec) {
    const int dim = sys.config().dim();
    const Eigen::VectorXd base = residual(sys, y).coeffs;
    Eigen::MatrixXd jac(dim, dim);
    std::vector<std::optional<std::string>> errors(dim);
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
        for (int col = 0; col < dim; ++col) errors[col] = jacobian_column(sys, y, base, col, jac);
    } else {
        for (int col = 0; col < dim; ++col) errors[col] = jacobian_column(sys, y, base, col, jac);
    }
    for (const auto& e : errors)
        if (e) throw InputError("forward_jacobian: " + *e);
    return jac;
}

namespace {

double inf_norm(const Eigen::VectorXd& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

// Residual norm of a trial point; overflow to non-finite counts as no
// improvement.
std::optional<Eigen::VectorXd> try_residual(const AssembledSystem& sys, const Eigen::VectorXd& y) {
    if (!y.allFinite()) return std::nullopt;
    try {
        return residual(sys, CoeffVector(sys.config(), y)).coeffs;
    } catch (const InputError&) {
        return std::nullopt;
    }
}

SolveReport newton(const AssembledSystem& sys, Eigen::VectorXd y, const SolveOptions& options) {
    Eigen::VectorXd r = residual(sys, CoeffVector(sys.config(), y)).coeffs;
    double norm = inf_norm(r);
    int iterations = 0;
    while (norm > options.tol && iterations < options.max_iter) {
        const Eigen::MatrixXd jac = forward_jacobian(sys, CoeffVector(sys.config(), y), options.exec);
        const Eigen::VectorXd step = lu_solve(jac, -r);
        ++iterations;

        double scale = 1.0;
        bool improved = false;
        for (int halving = 0; halving <= 20; ++halving, scale *= 0.5) {
            Eigen::VectorXd trial = y + scale * step;
            auto trial_r = try_residual(sys, trial);
            if (!trial_r) continue;
            const double trial_norm = inf_norm(*trial_r);
            if (trial_norm < norm) {
                y = std::move(trial);
                r = std::move(*trial_r);
                norm = trial_norm;
                improved = true;
                break;
            }
        }
        // Stalled: no damped step reduces the residual any further.
        if (!improved) break;
    }
    return SolveReport{CoeffVector(sys.config(), std::move(y)), iterations, norm, norm <= options.tol};
}

} // namespace

SolveReport solve(const AssembledSystem& sys, const SolveOptions& options) {
    std::optional<SolveReport> first;
    try {
        first = newton(sys, sys.forcing.coeffs, options);
        if (first->converged) return *first;
    } catch (const SingularMatrixError&) {
    }
    try {
        SolveReport second = newton(sys, Eigen::VectorXd::Zero(sys.config().dim()), options);
        second.used_fallback_start = true;
        if (second.converged || !first || second.residual_norm < first->residual_norm) return second;
    } catch (const SingularMatrixError&) {
        if (!first) throw;
    }
    return *first;
}

double error_bound(int mu, double max_derivative) {
    if (mu < 0) throw InputError("error_bound: mu must be non-negative");
    if (!(max_derivative >= 0.0)) throw InputError("error_bound: M must be non-negative");
    double denom = std::ldexp(1.0, 2 * mu + 1);
    for (int k = 2; k <= mu + 1; ++k) denom *= k;
    return max_derivative / denom;
}

namespace {

// Central difference of the given order: sum_k (-1)^k C(n,k) y(t + (n/2-k)h) / h^n.
double central_difference(const ScalarFunction& y, int order, double t, double h) {
    double sum = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= order; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binom * y(t + (0.5 * order - k) * h);
        binom = binom * (order - k) / (k + 1);
    }
    return sum / std::pow(h, order);
}

} // namespace

double estimate_derivative_max(const ScalarFunction& y, int order, double h, int grid_points) {
    if (order < 0) throw InputError("estimate_derivative_max: order must be non-negative");
    if (grid_points < 2) throw InputError("estimate_derivative_max: need at least two grid points");
    double best = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double t = static_cast<double>(i) / (grid_points - 1);
        double d;
        if (order == 0) {
            d = y(t);
        } else {
            const double coarse = central_difference(y, order, t, h);
            const double fine = central_difference(y, order, t, 0.5 * h);
            d = (4.0 * fine - coarse) / 3.0;
        }
        if (!std::isfinite(d)) throw InputError("estimate_derivative_max: non-finite derivative estimate");
        best = std::max(best, std::abs(d));
    }
    return best;
}

} // namespace hybridie
