#pragma once

#include <vector>

namespace hybridie {

/// Legendre polynomial p_m(x) by the three-term recursion.
double legendre(int m, double x);

/// p_m(x) together with its derivative p_m'(x).
struct LegendreValue {
    double value;
    double derivative;
};
LegendreValue legendre_with_derivative(int m, double x);

/// Gauss-Legendre rule on [-1,1]. Nodes ascend; weights are positive.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule. Nodes are Newton-refined roots of p_n
/// started from Chebyshev points; exact for polynomials of degree <= 2n-1.
/// Throws ConvergenceError if a root fails to settle to 1e-15 in 100 steps.
QuadratureRule gauss_rule(int n);

/// Process-wide cache of gauss_rule results; thread safe.
const QuadratureRule& cached_gauss_rule(int n);

} // namespace hybridie
