#include "hybridie/operational.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "hybridie/errors.hpp"
#include "hybridie/legendre.hpp"

namespace hybridie {

TripleTensor::TripleTensor(const BasisConfig& config) : config_(config) {
    const int r = config.r();
    values_.assign(static_cast<std::size_t>(r) * r * r, 0.0);
    // Integrand degree is at most 3(r-1).
    const int points = std::max(1, (3 * (r - 1) + 2) / 2);
    const QuadratureRule& rule = cached_gauss_rule(points);
    std::vector<std::vector<double>> p(r, std::vector<double>(rule.size()));
    for (int m = 0; m < r; ++m)
        for (std::size_t a = 0; a < rule.size(); ++a) p[m][a] = legendre(m, rule.nodes[a]);

    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            for (int m = 0; m < r; ++m) {
                // Parity and the triangle rule give exact zeros.
                if ((i + j + m) % 2 == 1 || m > i + j || m < std::abs(i - j)) continue;
                double sum = 0.0;
                // (p_i p_j) first so that t(i,j,m) == t(j,i,m) bitwise.
                for (std::size_t a = 0; a < rule.size(); ++a) sum += rule.weights[a] * (p[i][a] * p[j][a]) * p[m][a];
                values_[(i * r + j) * r + m] = 0.5 * (2.0 * m + 1.0) * sum;
            }
        }
    }
}

TripleTensor build_triple_tensor(const BasisConfig& config) {
    return TripleTensor(config);
}

OperatorMatrix build_P(const BasisConfig& config) {
    const int r = config.r();
    const int q = config.q();
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(r, r);
    e(0, 0) = 1.0;
    if (r > 1) e(0, 1) = 1.0;
    for (int m = 1; m < r; ++m) {
        e(m, m - 1) = -1.0 / (2.0 * m + 1.0);
        // p_r falls outside the space and is dropped from the last row.
        if (m + 1 < r) e(m, m + 1) = 1.0 / (2.0 * m + 1.0);
    }
    e /= 2.0 * q;

    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(config.dim(), config.dim());
    for (int k = 0; k < q; ++k) {
        p.block(k * r, k * r, r, r) = e;
        for (int l = k + 1; l < q; ++l) p(config.index(k, 0), config.index(l, 0)) = 1.0 / q;
    }
    return {config, std::move(p)};
}

OperatorMatrix build_L(const BasisConfig& config) {
    Eigen::VectorXd d(config.dim());
    for (int k = 0; k < config.q(); ++k)
        for (int m = 0; m < config.r(); ++m) d[config.index(k, m)] = 1.0 / ((2.0 * m + 1.0) * config.q());
    return {config, d.asDiagonal().toDenseMatrix()};
}

Eigen::MatrixXd lu_solve(Eigen::MatrixXd a, Eigen::MatrixXd b, double pivot_floor) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n || b.rows() != n) throw InputError("lu_solve: dimension mismatch");
    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        a.col(col).tail(n - col).cwiseAbs().maxCoeff(&pivot);
        pivot += col;
        if (std::abs(a(pivot, col)) < pivot_floor) {
            throw SingularMatrixError("lu_solve: pivot " + std::to_string(a(pivot, col)) + " in column " +
                                      std::to_string(col) + " is below " + std::to_string(pivot_floor));
        }
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            b.row(pivot).swap(b.row(col));
        }
        for (Eigen::Index row = col + 1; row < n; ++row) {
            const double factor = a(row, col) / a(col, col);
            if (factor == 0.0) continue;
            a.row(row).tail(n - col) -= factor * a.row(col).tail(n - col);
            b.row(row) -= factor * b.row(col);
        }
    }
    for (Eigen::Index row = n - 1; row >= 0; --row) {
        if (row + 1 < n) b.row(row) -= a.row(row).tail(n - row - 1) * b.bottomRows(n - row - 1);
        b.row(row) /= a(row, row);
    }
    return b;
}

OperatorMatrix build_J(const BasisConfig& config) {
    const Eigen::MatrixXd pt = build_P(config).entries.transpose();
    return {config, lu_solve(pt, Eigen::MatrixXd::Identity(config.dim(), config.dim()))};
}

namespace {

void require_same(const BasisConfig& a, const BasisConfig& b, const char* where) {
    if (!same_space(a, b)) {
        throw InputError(std::string(where) + ": basis mismatch (q=" + std::to_string(a.q()) + ", r=" +
                         std::to_string(a.r()) + " vs q=" + std::to_string(b.q()) + ", r=" + std::to_string(b.r()) + ")");
    }
}

} // namespace

OperatorMatrix coeff_matrix(const CoeffVector& c, const TripleTensor& tensor) {
    require_same(c.config, tensor.config(), "coeff_matrix");
    const BasisConfig& config = c.config;
    const int r = config.r();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(config.dim(), config.dim());
    for (int k = 0; k < config.q(); ++k) {
        for (int i = 0; i < r; ++i) {
            for (int m = 0; m < r; ++m) {
                double sum = 0.0;
                for (int j = 0; j < r; ++j) sum += c.coeffs[config.index(k, j)] * tensor(i, j, m);
                out(config.index(k, i), config.index(k, m)) = sum;
            }
        }
    }
    return {config, std::move(out)};
}

CoeffVector hat_vector(const OperatorMatrix& s, const TripleTensor& tensor) {
    require_same(s.config, tensor.config(), "hat_vector");
    const BasisConfig& config = s.config;
    const int r = config.r();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(config.dim());
    for (int k = 0; k < config.q(); ++k) {
        for (int m = 0; m < r; ++m) {
            double sum = 0.0;
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) sum += s.entries(config.index(k, i), config.index(k, j)) * tensor(i, j, m);
            out[config.index(k, m)] = sum;
        }
    }
    return {config, std::move(out)};
}

} // namespace hybridie
