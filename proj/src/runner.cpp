#include "hybridie/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace hybridie {

std::optional<double> RunOutput::max_error() const {
    std::optional<double> best;
    for (const GridRow& row : rows)
        if (row.abs_error) best = std::max(best.value_or(0.0), *row.abs_error);
    return best;
}

RunOutput run(const ProblemSpec& spec, const RunOptions& options) {
    const BasisConfig config(options.q.value_or(spec.q), options.r.value_or(spec.r), options.quad_points);

    const expr::Expr& f = spec.forcing;
    const expr::Expr& k = spec.kernel;
    CoeffVector forcing = project_function(config, [&f](double t) { return f.eval(t); }, options.solve.exec);
    OperatorMatrix kernel =
        project_kernel(config, [&k](double t, double s) { return k.eval(t, s); }, options.solve.exec);

    AssembledSystem sys = assemble(spec.kind, spec.scalar, std::move(kernel), std::move(forcing), spec.m, spec.n,
                                   InitialConditions(config, spec.initial_conditions));
    RunOutput out{config, spec.kind, solve(sys, options.solve), {}, std::nullopt};

    const std::vector<double> grid = options.grid_size ? uniform_grid(*options.grid_size) : spec.grid;
    out.rows.reserve(grid.size());
    for (double t : grid) {
        GridRow row{t, reconstruct(out.report.y, t), std::nullopt, std::nullopt};
        if (spec.exact) {
            row.y_exact = spec.exact->eval(t);
            row.abs_error = std::abs(row.y_approx - *row.y_exact);
        }
        out.rows.push_back(row);
    }

    const int mu = config.r() - 1;
    const std::optional<double> user_m = options.bound_m ? options.bound_m : spec.bound_m;
    if (user_m) {
        out.bound = ErrorBound{mu, *user_m, false, error_bound(mu, *user_m)};
    } else if (spec.exact) {
        const expr::Expr& exact = *spec.exact;
        const double m = estimate_derivative_max([&exact](double t) { return exact.eval(t); }, mu + 1);
        out.bound = ErrorBound{mu, m, true, error_bound(mu, m)};
    }
    return out;
}

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_csv(const RunOutput& out, std::ostream& os) {
    os << "t,y_approx,y_exact,abs_error\n";
    for (const GridRow& row : out.rows) {
        os << g17(row.t) << ',' << g17(row.y_approx) << ',';
        if (row.y_exact) os << g17(*row.y_exact);
        os << ',';
        if (row.abs_error) os << g17(*row.abs_error);
        os << '\n';
    }
}

void emit_csv(const RunOutput& out, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_csv(out, file);
    if (!file.flush()) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_report(const RunOutput& out, std::ostream& os) {
    os << "equation: " << to_string(out.kind) << "\n";
    os << "basis: r=" << out.config.r() << " q=" << out.config.q() << " (dimension " << out.config.dim() << ")\n";
    os << "converged: " << (out.report.converged ? "yes" : "no") << "\n";
    os << "newton iterations: " << out.report.iterations << (out.report.used_fallback_start ? " (restarted from 0)" : "")
       << "\n";
    os << "residual inf-norm: " << g17(out.report.residual_norm) << "\n";
    os << "coefficients Y:\n";
    for (int i = 0; i < out.report.y.coeffs.size(); ++i) {
        os << "  [" << i / out.config.r() + 1 << "," << i % out.config.r() << "] " << g17(out.report.y.coeffs[i])
           << "\n";
    }
    if (out.bound) {
        os << "error bound: " << g17(out.bound->value) << " (mu=" << out.bound->mu << ", M=" << g17(out.bound->max_derivative)
           << (out.bound->estimated ? ", estimated" : ", supplied") << ")\n";
    } else {
        os << "error bound: not available (no exact solution or M supplied)\n";
    }
    if (const auto e = out.max_error()) os << "max grid error: " << g17(*e) << "\n";
}

void emit_report(const RunOutput& out, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_report(out, file);
    if (!file.flush()) throw std::runtime_error("failed writing '" + path.string() + "'");
}

} // namespace hybridie
