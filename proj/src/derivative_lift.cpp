#include "hybridie/derivative_lift.hpp"

#include <cmath>
#include <string>

#include "hybridie/errors.hpp"

namespace hybridie {

InitialConditions::InitialConditions(BasisConfig cfg, std::vector<double> v) : config(cfg), values(std::move(v)) {
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i])) throw InputError("initial condition a" + std::to_string(i) + " is not finite");
}

CoeffVector project_initial(double a, const BasisConfig& config) {
    if (!std::isfinite(a)) throw InputError("project_initial: value is not finite");
    Eigen::VectorXd c = Eigen::VectorXd::Zero(config.dim());
    for (int k = 0; k < config.q(); ++k) c[config.index(k, 0)] = a;
    return {config, std::move(c)};
}

CoeffVector lift(const CoeffVector& y, int n, const InitialConditions& ics, const OperatorMatrix& j) {
    if (n < 0) throw InputError("lift: derivative order must be non-negative, got " + std::to_string(n));
    if (ics.size() < static_cast<std::size_t>(n)) {
        throw InputError("lift: derivative of order " + std::to_string(n) + " needs " + std::to_string(n) +
                         " initial condition(s) y(0)..y^(" + std::to_string(n - 1) + ")(0), got " +
                         std::to_string(ics.size()));
    }
    if (!same_space(y.config, j.config)) throw InputError("lift: coefficient vector and J use different bases");

    Eigen::VectorXd cur = y.coeffs;
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < y.config.q(); ++k) cur[y.config.index(k, 0)] -= ics.values[i];
        cur = j.entries * cur;
    }
    return {y.config, std::move(cur)};
}

} // namespace hybridie
