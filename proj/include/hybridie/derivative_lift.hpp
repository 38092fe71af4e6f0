#pragma once

#include <vector>

#include "hybridie/hybrid_basis.hpp"

namespace hybridie {

/// Values a_i = y^(i)(0), i = 0..l.
struct InitialConditions {
    InitialConditions(BasisConfig config, std::vector<double> values);

    BasisConfig config;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

/// Coefficients of the constant function a: a in each m=0 slot.
CoeffVector project_initial(double a, const BasisConfig& config);

/// Coefficients of y^(n) from those of y:
///   Y^(n) = J^n Y - sum_{k=1}^{n} J^k Y0^(n-k),
/// evaluated as Y^(i+1) = J (Y^(i) - Y0^(i)) without forming powers of J.
/// Throws InputError if fewer than n initial conditions are supplied.
CoeffVector lift(const CoeffVector& y, int n, const InitialConditions& ics, const OperatorMatrix& j);

} // namespace hybridie
