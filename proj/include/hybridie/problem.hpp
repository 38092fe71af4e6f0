#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hybridie/errors.hpp"
#include "hybridie/expr.hpp"
#include "hybridie/solver.hpp"

namespace hybridie {

/// Problem file error positioned at source:line[:column].
class ProblemFileError : public InputError {
public:
    ProblemFileError(const std::string& source, int line, int column, const std::string& message);

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// One integro-differential problem as read from a problem file.
struct ProblemSpec {
    EquationKind kind = EquationKind::fredholm;
    double scalar = 0.0;  // lambda or beta
    expr::Expr kernel;
    std::string kernel_text;
    expr::Expr forcing;
    std::string forcing_text;
    int m = 0;
    int n = 0;
    std::vector<double> initial_conditions;
    int r = 0;
    int q = 0;
    std::optional<expr::Expr> exact;
    std::string exact_text;
    std::vector<double> grid;
    std::optional<double> bound_m;  // user-supplied M for the error bound
};

/// Grid i/size, i = 0..size-1.
std::vector<double> uniform_grid(int size);

/// Parses problem-file text. `source` names the origin in diagnostics.
///
/// Format: one `key = value` per line, `#` starts a comment, blank lines
/// ignored, expression values may be double-quoted. Keys: kind, lambda
/// (fredholm) or beta (volterra), kernel, f, m, n, ics, r, q, and the
/// optional exact, grid, bound_m.
ProblemSpec parse_problem(std::string_view text, const std::string& source = "<input>");

ProblemSpec load_problem(const std::filesystem::path& path);

} // namespace hybridie
