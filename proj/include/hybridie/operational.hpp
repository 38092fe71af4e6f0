#pragma once

#include <vector>

#include "hybridie/hybrid_basis.hpp"

namespace hybridie {

/// Normalized triple products on one block,
///   t(i,j,m) = int b_i b_j b_m / <b_m,b_m> = (2m+1)/2 * int_{-1}^{1} p_i p_j p_m dx.
/// Identical for every block, so one r x r x r table serves the whole basis.
class TripleTensor {
public:
    explicit TripleTensor(const BasisConfig& config);

    const BasisConfig& config() const { return config_; }
    int r() const { return config_.r(); }

    double operator()(int i, int j, int m) const { return values_[(i * r() + j) * r() + m]; }

private:
    BasisConfig config_;
    std::vector<double> values_;
};

/// Operational matrix of integration: int_0^t B ~ P B(t). Block upper
/// triangular with E on the diagonal and H above it.
OperatorMatrix build_P(const BasisConfig& config);

/// Gram matrix L = int_0^1 B B^T dt, diagonal with 1/((2m+1)q).
OperatorMatrix build_L(const BasisConfig& config);

/// J = (P^T)^{-1} via dense LU with partial pivoting. Throws
/// SingularMatrixError if a pivot falls below 1e-14.
OperatorMatrix build_J(const BasisConfig& config);

TripleTensor build_triple_tensor(const BasisConfig& config);

/// C~ with B B^T C = C~ B: multiplication by the function with
/// coefficients C, truncated back into the space. Block diagonal.
OperatorMatrix coeff_matrix(const CoeffVector& c, const TripleTensor& tensor);

/// S^ with B^T S B = S^ B. Only the diagonal blocks of S contribute.
CoeffVector hat_vector(const OperatorMatrix& s, const TripleTensor& tensor);

/// Dense solve of A x = b by LU with partial pivoting; the same routine
/// backs build_J and the Newton steps.
Eigen::MatrixXd lu_solve(Eigen::MatrixXd a, Eigen::MatrixXd b, double pivot_floor = 1e-14);

} // namespace hybridie
