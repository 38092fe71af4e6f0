#pragma once

#include <functional>

#include <Eigen/Dense>

namespace hybridie {

/// Shape of the hybrid space: q equal block-pulse subintervals of [0,1),
/// each carrying shifted Legendre polynomials of order 0..r-1.
///
/// Coefficients are stored block-major: index (k-1)*r + m for block k
/// (1-based) and order m. quad_points is the Gauss rule size used per
/// subinterval by the projections.
class BasisConfig {
public:
    static constexpr int kDefaultQuadPoints = 24;

    BasisConfig(int q, int r, int quad_points = kDefaultQuadPoints);

    int q() const { return q_; }
    int r() const { return r_; }
    int quad_points() const { return quad_points_; }
    int dim() const { return q_ * r_; }

    /// Flat index of (block, order), both 0-based.
    int index(int block, int order) const { return block * r_ + order; }

    /// 0-based block containing t; t must lie in [0,1).
    int block_of(double t) const;

    friend bool operator==(const BasisConfig&, const BasisConfig&) = default;

private:
    int q_;
    int r_;
    int quad_points_;
};

/// Same hybrid space (q and r agree); quadrature size may differ.
inline bool same_space(const BasisConfig& a, const BasisConfig& b) {
    return a.q() == b.q() && a.r() == b.r();
}

/// Hybrid coefficients of a function of one variable (F, Y, initial
/// condition vectors and lifted derivatives alike).
struct CoeffVector {
    CoeffVector(BasisConfig config, Eigen::VectorXd coeffs);
    static CoeffVector zero(const BasisConfig& config);

    BasisConfig config;
    Eigen::VectorXd coeffs;
};

/// rq x rq matrix acting on hybrid coefficients, same index convention on
/// rows and columns.
struct OperatorMatrix {
    OperatorMatrix(BasisConfig config, Eigen::MatrixXd entries);
    static OperatorMatrix zero(const BasisConfig& config);

    BasisConfig config;
    Eigen::MatrixXd entries;
};

using ScalarFunction = std::function<double(double)>;
using KernelFunction = std::function<double(double, double)>;

/// Selects the OpenMP path or the plain serial reference. Both produce
/// bitwise identical results.
enum class Execution { serial, parallel };

/// B(t): exactly one block of r entries is nonzero.
/// Throws DomainError unless 0 <= t < 1.
Eigen::VectorXd eval_basis(const BasisConfig& config, double t);

/// L2 projection f_km = <f,b_km>/<b_km,b_km> by per-block Gauss quadrature.
CoeffVector project_function(const BasisConfig& config, const ScalarFunction& f,
                             Execution exec = Execution::parallel);

/// G with g(t,s) ~ B(t)^T G B(s), tensor Gauss rule per block pair.
OperatorMatrix project_kernel(const BasisConfig& config, const KernelFunction& g,
                              Execution exec = Execution::parallel);

/// Y^T B(t).
double reconstruct(const CoeffVector& y, double t);

} // namespace hybridie
