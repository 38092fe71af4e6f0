#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <vector>

#include "hybridie/problem.hpp"
#include "hybridie/solver.hpp"

namespace hybridie {

struct RunOptions {
    std::optional<int> r;  // override the file's r
    std::optional<int> q;  // override the file's q
    std::optional<int> grid_size;
    std::optional<double> bound_m;  // takes precedence over the file's bound_m
    int quad_points = BasisConfig::kDefaultQuadPoints;
    SolveOptions solve;
};

struct GridRow {
    double t;
    double y_approx;
    std::optional<double> y_exact;
    std::optional<double> abs_error;
};

struct ErrorBound {
    int mu;
    double max_derivative;  // M
    bool estimated;         // M from finite differences of the exact solution
    double value;
};

struct RunOutput {
    BasisConfig config;
    EquationKind kind;
    SolveReport report;
    std::vector<GridRow> rows;
    std::optional<ErrorBound> bound;

    bool converged() const { return report.converged; }
    /// Largest abs_error over the grid, or nullopt without an exact solution.
    std::optional<double> max_error() const;
};

/// Projects, assembles, solves and evaluates on the grid. Solver
/// non-convergence is reported through RunOutput::report.converged.
RunOutput run(const ProblemSpec& spec, const RunOptions& options = {});

/// `t,y_approx,y_exact,abs_error`, 17 significant digits, LF endings.
void write_csv(const RunOutput& out, std::ostream& os);
void emit_csv(const RunOutput& out, const std::filesystem::path& path);

void write_report(const RunOutput& out, std::ostream& os);
void emit_report(const RunOutput& out, const std::filesystem::path& path);

} // namespace hybridie
