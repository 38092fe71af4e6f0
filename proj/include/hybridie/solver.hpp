#pragma once

#include "hybridie/derivative_lift.hpp"
#include "hybridie/hybrid_basis.hpp"
#include "hybridie/operational.hpp"

namespace hybridie {

enum class EquationKind { fredholm, volterra };

const char* to_string(EquationKind kind);

/// Discretized integro-differential equation
///   y(t) + scalar * int k(t,s) y^(m)(s) y^(n)(s) ds = f(t)
/// over [0,1] (Fredholm) or [0,t] (Volterra), together with every
/// operator the residual needs.
struct AssembledSystem {
    EquationKind kind;
    double scalar;
    OperatorMatrix kernel;  // K or G
    CoeffVector forcing;    // F
    int m;
    int n;
    InitialConditions ics;
    TripleTensor tensor;
    OperatorMatrix P;
    OperatorMatrix L;
    OperatorMatrix J;

    const BasisConfig& config() const { return forcing.config; }
};

/// Builds P, L, J and the triple tensor for the forcing's basis and checks
/// that kernel, forcing and initial conditions agree.
AssembledSystem assemble(EquationKind kind, double scalar, OperatorMatrix kernel, CoeffVector forcing, int m, int n,
                         InitialConditions ics);

/// Y + lambda K C~(Y^(m)) L Y^(n) - F
CoeffVector residual_fredholm(const AssembledSystem& sys, const CoeffVector& y);

/// Y + beta S^ - F with S = G C~(Y^(m)) C~(Y^(n)) P
CoeffVector residual_volterra(const AssembledSystem& sys, const CoeffVector& y);

/// Dispatches on sys.kind.
CoeffVector residual(const AssembledSystem& sys, const CoeffVector& y);

/// Forward-difference Jacobian of the residual, step 1e-7*max(1,|y_i|).
/// Columns are independent; the parallel path is bitwise equal to serial.
Eigen::MatrixXd forward_jacobian(const AssembledSystem& sys, const CoeffVector& y,
                                 Execution exec = Execution::parallel);

struct SolveOptions {
    double tol = 1e-12;
    int max_iter = 100;
    Execution exec = Execution::parallel;
};

struct SolveReport {
    CoeffVector y;
    int iterations;
    double residual_norm;
    bool converged;
    bool used_fallback_start = false;
};

/// Damped Newton from Y = F, halving the step up to 20 times until the
/// residual decreases. Converged when ||R||_inf <= tol. If the first
/// attempt fails, restarts once from Y = 0. Non-convergence is reported,
/// not thrown; a singular Jacobian on both attempts throws
/// SingularMatrixError.
SolveReport solve(const AssembledSystem& sys, const SolveOptions& options = {});

/// M / (2^(2mu+1) (mu+1)!)
double error_bound(int mu, double max_derivative);

/// Estimates max over [0,1] of |y^(order)| on a 1001-point grid with a
/// central difference of step h, Richardson-extrapolated once.
double estimate_derivative_max(const ScalarFunction& y, int order, double h = 1e-2, int grid_points = 1001);

} // namespace hybridie
