#include "hybridie/hybrid_basis.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hybridie/errors.hpp"
#include "hybridie/legendre.hpp"

namespace hybridie {

BasisConfig::BasisConfig(int q, int r, int quad_points) : q_(q), r_(r), quad_points_(quad_points) {
    if (q < 1 || r < 1) {
        throw InputError("BasisConfig: q and r must be positive (q=" + std::to_string(q) +
                         ", r=" + std::to_string(r) + ")");
    }
    if (quad_points < r) {
        throw InputError("BasisConfig: quad_points (" + std::to_string(quad_points) + ") must be at least r (" +
                         std::to_string(r) + ")");
    }
}

int BasisConfig::block_of(double t) const {
    if (!(t >= 0.0 && t < 1.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "hybrid basis is defined on [0,1); got t=" << t;
        throw DomainError(os.str());
    }
    const int k = static_cast<int>(t * q_);
    return k < q_ ? k : q_ - 1;
}

CoeffVector::CoeffVector(BasisConfig cfg, Eigen::VectorXd c) : config(cfg), coeffs(std::move(c)) {
    if (coeffs.size() != config.dim()) {
        throw InputError("CoeffVector: length " + std::to_string(coeffs.size()) + " does not match r*q = " +
                         std::to_string(config.dim()));
    }
    if (!coeffs.allFinite()) throw InputError("CoeffVector: non-finite coefficient");
}

CoeffVector CoeffVector::zero(const BasisConfig& config) {
    return {config, Eigen::VectorXd::Zero(config.dim())};
}

OperatorMatrix::OperatorMatrix(BasisConfig cfg, Eigen::MatrixXd e) : config(cfg), entries(std::move(e)) {
    if (entries.rows() != config.dim() || entries.cols() != config.dim()) {
        throw InputError("OperatorMatrix: shape " + std::to_string(entries.rows()) + "x" +
                         std::to_string(entries.cols()) + " does not match r*q = " + std::to_string(config.dim()));
    }
    if (!entries.allFinite()) throw InputError("OperatorMatrix: non-finite entry");
}

OperatorMatrix OperatorMatrix::zero(const BasisConfig& config) {
    return {config, Eigen::MatrixXd::Zero(config.dim(), config.dim())};
}

Eigen::VectorXd eval_basis(const BasisConfig& config, double t) {
    const int k = config.block_of(t);
    const double x = 2.0 * config.q() * t - 2.0 * k - 1.0;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(config.dim());
    // Same recursion as legendre(), unrolled to fill all orders at once.
    double prev = 1.0;
    double cur = x;
    b[config.index(k, 0)] = 1.0;
    if (config.r() > 1) b[config.index(k, 1)] = x;
    for (int m = 1; m + 1 < config.r(); ++m) {
        const double next = ((2.0 * m + 1.0) * x * cur - m * prev) / (m + 1.0);
        prev = cur;
        cur = next;
        b[config.index(k, m + 1)] = cur;
    }
    return b;
}

double reconstruct(const CoeffVector& y, double t) {
    return y.coeffs.dot(eval_basis(y.config, t));
}

namespace {

// Quadrature on one reference block: node abscissae and the products
// w_a * p_m(x_a) for every order m < r.
struct BlockRule {
    std::vector<double> x;
    std::vector<std::vector<double>> weighted;  // [m][a]

    BlockRule(const BasisConfig& config) {
        const QuadratureRule& rule = cached_gauss_rule(config.quad_points());
        x = rule.nodes;
        weighted.assign(config.r(), std::vector<double>(rule.size()));
        for (int m = 0; m < config.r(); ++m)
            for (std::size_t a = 0; a < rule.size(); ++a) weighted[m][a] = rule.weights[a] * legendre(m, rule.nodes[a]);
    }

    std::size_t size() const { return x.size(); }

    // Physical time of reference node a in 0-based block k.
    double time(const BasisConfig& config, int k, std::size_t a) const {
        return (x[a] + 2.0 * k + 1.0) / (2.0 * config.q());
    }
};

std::string describe_bad_sample(double t, double value) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite function value " << value << " at quadrature node t=" << t;
    return os.str();
}

std::string describe_bad_kernel(double t, double s, double value) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite kernel value " << value << " at grid point (t=" << t << ", s=" << s << ")";
    return os.str();
}

// Projects f onto block k, writing r coefficients. Returns an error message
// instead of throwing so it can run inside an OpenMP region.
std::optional<std::string> project_block(const BasisConfig& config, const BlockRule& rule, const ScalarFunction& f,
                                         int k, Eigen::VectorXd& out) {
    std::vector<double> samples(rule.size());
    for (std::size_t a = 0; a < rule.size(); ++a) {
        const double t = rule.time(config, k, a);
        samples[a] = f(t);
        if (!std::isfinite(samples[a])) return describe_bad_sample(t, samples[a]);
    }
    for (int m = 0; m < config.r(); ++m) {
        double sum = 0.0;
        for (std::size_t a = 0; a < rule.size(); ++a) sum += rule.weighted[m][a] * samples[a];
        out[config.index(k, m)] = 0.5 * (2.0 * m + 1.0) * sum;
    }
    return std::nullopt;
}

} // namespace

CoeffVector project_function(const BasisConfig& config, const ScalarFunction& f, Execution exec) {
    const BlockRule rule(config);
    Eigen::VectorXd out(config.dim());
    std::vector<std::optional<std::string>> errors(config.q());
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
        for (int k = 0; k < config.q(); ++k) errors[k] = project_block(config, rule, f, k, out);
    } else {
        for (int k = 0; k < config.q(); ++k) {
            errors[k] = project_block(config, rule, f, k, out);
            if (errors[k]) break;
        }
    }
    for (const auto& e : errors)
        if (e) throw InputError("project_function: " + *e);
    return {config, std::move(out)};
}

namespace {

// Serial reference: every entry re-samples g and sums directly. The
// summation order (inner over t-nodes, outer over s-nodes) matches the
// parallel path exactly.
OperatorMatrix project_kernel_serial(const BasisConfig& config, const BlockRule& rule, const KernelFunction& g) {
    const int r = config.r();
    const std::size_t n = rule.size();
    Eigen::MatrixXd G(config.dim(), config.dim());
    for (int k = 0; k < config.q(); ++k) {
        for (int i = 0; i < r; ++i) {
            for (int l = 0; l < config.q(); ++l) {
                for (int j = 0; j < r; ++j) {
                    double total = 0.0;
                    for (std::size_t b = 0; b < n; ++b) {
                        const double s = rule.time(config, l, b);
                        double inner = 0.0;
                        for (std::size_t a = 0; a < n; ++a) {
                            const double t = rule.time(config, k, a);
                            const double v = g(t, s);
                            if (!std::isfinite(v)) throw InputError("project_kernel: " + describe_bad_kernel(t, s, v));
                            inner += rule.weighted[i][a] * v;
                        }
                        total += rule.weighted[j][b] * inner;
                    }
                    G(config.index(k, i), config.index(l, j)) = 0.25 * (2.0 * i + 1.0) * (2.0 * j + 1.0) * total;
                }
            }
        }
    }
    return {config, std::move(G)};
}

// Samples g once per block pair, then contracts.
std::optional<std::string> project_block_pair(const BasisConfig& config, const BlockRule& rule,
                                              const KernelFunction& g, int k, int l, Eigen::MatrixXd& G) {
    const int r = config.r();
    const std::size_t n = rule.size();
    std::vector<double> samples(n * n);  // [b][a]
    for (std::size_t b = 0; b < n; ++b) {
        const double s = rule.time(config, l, b);
        for (std::size_t a = 0; a < n; ++a) {
            const double t = rule.time(config, k, a);
            const double v = g(t, s);
            if (!std::isfinite(v)) return describe_bad_kernel(t, s, v);
            samples[b * n + a] = v;
        }
    }
    std::vector<double> inner(n);
    for (int i = 0; i < r; ++i) {
        for (std::size_t b = 0; b < n; ++b) {
            double sum = 0.0;
            for (std::size_t a = 0; a < n; ++a) sum += rule.weighted[i][a] * samples[b * n + a];
            inner[b] = sum;
        }
        for (int j = 0; j < r; ++j) {
            double total = 0.0;
            for (std::size_t b = 0; b < n; ++b) total += rule.weighted[j][b] * inner[b];
            G(config.index(k, i), config.index(l, j)) = 0.25 * (2.0 * i + 1.0) * (2.0 * j + 1.0) * total;
        }
    }
    return std::nullopt;
}

OperatorMatrix project_kernel_parallel(const BasisConfig& config, const BlockRule& rule, const KernelFunction& g) {
    const int q = config.q();
    Eigen::MatrixXd G(config.dim(), config.dim());
    std::vector<std::optional<std::string>> errors(static_cast<std::size_t>(q) * q);
#pragma omp parallel for collapse(2) schedule(dynamic)
    for (int k = 0; k < q; ++k)
        for (int l = 0; l < q; ++l) errors[static_cast<std::size_t>(k) * q + l] = project_block_pair(config, rule, g, k, l, G);
    for (const auto& e : errors)
        if (e) throw InputError("project_kernel: " + *e);
    return {config, std::move(G)};
}

} // namespace

OperatorMatrix project_kernel(const BasisConfig& config, const KernelFunction& g, Execution exec) {
    const BlockRule rule(config);
    return exec == Execution::parallel ? project_kernel_parallel(config, rule, g)
                                       : project_kernel_serial(config, rule, g);
}

} // namespace hybridie
