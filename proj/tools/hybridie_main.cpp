// hybridie: solve nonlinear Fredholm/Volterra integro-differential equations
// in a hybrid block-pulse/Legendre basis.
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hybridie/reproduce.hpp"
#include "hybridie/runner.hpp"

namespace {

constexpr const char* kGrammarHelp = R"(
Problem file: one `key = value` per line, `#` comments.
  kind     fredholm | volterra
  lambda   scalar (fredholm)      beta  scalar (volterra)
  kernel   expression in t and s  f     expression in t
  m, n     derivative orders      ics   y(0), ..., y^(l)(0), l = max(m,n)-1
  r, q     Legendre orders per block, number of blocks
  exact    optional exact solution in t
  grid     optional evaluation points in [0,1) (default 0.0,0.1,...,0.9)
  bound_m  optional M for the error bound
Expressions: + - * / ^, unary -, sin cos exp log sqrt abs, pi, e.
Unary minus binds looser than ^: -t^2 means -(t^2).
)";

int cmd_solve(const std::string& file, const hybridie::RunOptions& options, const std::optional<std::string>& out_path,
              const std::optional<std::string>& report_path) {
    const hybridie::ProblemSpec spec = hybridie::load_problem(file);
    const hybridie::RunOutput out = hybridie::run(spec, options);
    if (out_path) hybridie::emit_csv(out, *out_path);
    else hybridie::write_csv(out, std::cout);
    if (report_path) hybridie::emit_report(out, *report_path);
    else hybridie::write_report(out, std::cerr);
    if (!out.converged()) {
        std::cerr << "error: Newton iteration did not converge (residual " << out.report.residual_norm << ")\n";
        return 2;
    }
    return 0;
}

int cmd_reproduce() {
    bool all = true;
    for (const auto& result : hybridie::reproduce_reference()) {
        hybridie::print_case(result, std::cout);
        all = all && result.pass();
    }
    std::cout << (all ? "all reference cases reproduced\n" : "reference mismatch\n");
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid block-pulse/Legendre solver for nonlinear integro-differential equations"};
    app.footer(kGrammarHelp);
    app.require_subcommand(1);

    std::string file;
    int r = 0, q = 0, grid_size = 0, max_iter = 100;
    double tol = 1e-12, bound_m = 0.0;
    std::string out_path, report_path;
    bool serial = false;

    CLI::App* solve = app.add_subcommand("solve", "solve the problem described by a problem file");
    solve->add_option("file", file, "problem file")->required()->check(CLI::ExistingFile);
    auto* r_opt = solve->add_option("--r", r, "Legendre orders per block (overrides file)")->check(CLI::PositiveNumber);
    auto* q_opt = solve->add_option("--q", q, "number of block-pulse intervals (overrides file)")->check(CLI::PositiveNumber);
    solve->add_option("--tol", tol, "residual infinity-norm tolerance")->check(CLI::PositiveNumber);
    solve->add_option("--max-iter", max_iter, "Newton iteration limit")->check(CLI::PositiveNumber);
    auto* grid_opt = solve->add_option("--grid-size", grid_size, "evaluate at i/N, i = 0..N-1")->check(CLI::NonNegativeNumber);
    auto* out_opt = solve->add_option("--out", out_path, "CSV output path (default stdout)");
    auto* report_opt = solve->add_option("--report", report_path, "report output path (default stderr)");
    auto* bound_opt = solve->add_option("--bound-m", bound_m, "M for the error bound")->check(CLI::NonNegativeNumber);
    solve->add_flag("--serial", serial, "use the serial reference kernels");

    CLI::App* reproduce = app.add_subcommand("reproduce-paper", "rerun the reference worked examples and diff");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) {
            hybridie::RunOptions options;
            if (*r_opt) options.r = r;
            if (*q_opt) options.q = q;
            if (*grid_opt) options.grid_size = grid_size;
            if (*bound_opt) options.bound_m = bound_m;
            options.solve.tol = tol;
            options.solve.max_iter = max_iter;
            options.solve.exec = serial ? hybridie::Execution::serial : hybridie::Execution::parallel;
            return cmd_solve(file, options, *out_opt ? std::optional(out_path) : std::nullopt,
                             *report_opt ? std::optional(report_path) : std::nullopt);
        }
        if (*reproduce) return cmd_reproduce();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
