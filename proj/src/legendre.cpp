#include "hybridie/legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "hybridie/errors.hpp"

namespace hybridie {

double legendre(int m, double x) {
    return legendre_with_derivative(m, x).value;
}

LegendreValue legendre_with_derivative(int m, double x) {
    if (m == 0) return {1.0, 0.0};
    double prev = 1.0;
    double cur = x;
    for (int k = 1; k < m; ++k) {
        const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    // p_m' from p_m and p_{m-1}; the endpoint form avoids the 0/0 at |x| = 1.
    double deriv;
    if (std::abs(x) == 1.0) {
        const double sign = (x > 0.0 || m % 2 == 1) ? 1.0 : -1.0;
        deriv = sign * 0.5 * m * (m + 1.0);
    } else {
        deriv = m * (x * cur - prev) / (x * x - 1.0);
    }
    return {cur, deriv};
}

QuadratureRule gauss_rule(int n) {
    if (n < 1) throw InputError("gauss_rule: n must be positive, got " + std::to_string(n));
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);

    // Roots come in +/- pairs; solve the upper half and mirror.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        bool converged = false;
        LegendreValue p{};
        for (int it = 0; it < 100; ++it) {
            p = legendre_with_derivative(n, x);
            const double dx = p.value / p.derivative;
            x -= dx;
            if (std::abs(dx) <= 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw ConvergenceError("gauss_rule: node " + std::to_string(i) + " of " + std::to_string(n) +
                                   " did not converge");
        }
        p = legendre_with_derivative(n, x);
        const double w = 2.0 / ((1.0 - x * x) * p.derivative * p.derivative);
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        rule.weights[n - 1 - i] = w;
        rule.weights[i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

const QuadratureRule& cached_gauss_rule(int n) {
    static std::mutex mutex;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, gauss_rule(n)).first;
    return it->second;
}

} // namespace hybridie
