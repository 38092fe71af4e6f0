#include "hybridie/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>

namespace hybridie {

namespace {

constexpr const char* kExample1 = R"prob(# y(t) + int_0^1 e^(t-s) y(s) y'(s) ds = e^(t+1),  y(0) = 1
kind = fredholm
lambda = 1
kernel = "exp(t-s)"
f = "e^(t+1)"
m = 0
n = 1
ics = 1
exact = "exp(t)"
)prob";

constexpr const char* kExample2 = R"prob(# y(t) + int_0^t sin(t-s) y(s) y'(s) ds = 2t^3 + t^2 - 12t + 12 sin t,  y(0) = 0
kind = volterra
beta = 1
kernel = "sin(t-s)"
f = "2*t^3 + t^2 - 12*t + 12*sin(t)"
m = 0
n = 1
ics = 0
r = 3
q = 4
exact = "t^2"
)prob";

std::vector<ReferenceCase> make_cases() {
    constexpr double e = std::numbers::e;
    std::vector<ReferenceCase> cases;
    cases.push_back({
        "example1-fredholm-r2-q1",
        std::string(kExample1) + "r = 2\nq = 1\n",
        std::nullopt,
        {e - 1.0, 9.0 - 3.0 * e},
        1.5e-2,
        {0.120825, 0.05579, 0.00182, 0.03992, 0.06816, 0.08146, 0.07827, 0.05683, 0.01525, 0.04861},
        1.5e-2,
        0.169893,
        1e-6,
        "reference Y = (e-1, 9-3e) is the projection of exp(t), not the discrete solution; the reference error "
        "table matches the discrete solution. Both compared at 1.5e-2.",
    });
    cases.push_back({
        "example1-fredholm-r3-q4",
        std::string(kExample1) + "r = 3\nq = 4\n",
        std::nullopt,
        {1.1361, 0.141865, 0.00590841, 1.45878, 0.182158, 0.00758655, 1.87312, 0.233896, 0.00974132, 2.40513, 0.300328,
         0.0125081},
        5e-4,
        {0.000145961, 0.0000409679, 0.0000553281, 0.0000656897, 0.0000536172, 0.000240649, 0.0000675446,
         0.0000912206, 0.000108304, 0.0000883998},
        5e-5,
        0.01416,
        5e-6,
        "",
    });
    cases.push_back({
        "example2-volterra-r3-q4",
        kExample2,
        2.0,
        {0.0208333, 0.0312487, 0.0104375, 0.145833, 0.0937492, 0.0104781, 0.395833, 0.15625, 0.0105145, 0.770834,
         0.218753, 0.010543},
        5e-4,
        {0.0000221689, 8.9e-6, 4.99e-8, 3e-6, 0.0000271471, 0.0000975226, 0.0000429716, 4.32e-6, 3.76e-6,
         0.0000547743},
        5e-5,
        0.0104167,
        1e-6,
        "reference bound uses M = max|y''| = 2 for y = t^2 (the third derivative vanishes); M is supplied.",
    });
    return cases;
}

CaseResult check_case(const ReferenceCase& ref, Execution exec) {
    RunOptions options;
    options.bound_m = ref.bound_m;
    options.solve.exec = exec;
    CaseResult result{&ref, run(parse_problem(ref.problem_text, ref.name), options), {}};
    const RunOutput& out = result.output;

    result.checks.push_back({"solver converged", out.converged(), out.report.residual_norm, 1e-12});

    double y_dev = 0.0;
    for (std::size_t i = 0; i < ref.coefficients.size(); ++i)
        y_dev = std::max(y_dev, std::abs(out.report.y.coeffs[static_cast<Eigen::Index>(i)] - ref.coefficients[i]));
    result.checks.push_back({"coefficients Y", y_dev <= ref.coefficient_tol, y_dev, ref.coefficient_tol});

    double table_dev = 0.0;
    for (std::size_t i = 0; i < ref.error_table.size() && i < out.rows.size(); ++i)
        table_dev = std::max(table_dev, std::abs(out.rows[i].abs_error.value_or(NAN) - ref.error_table[i]));
    const bool table_ok = out.rows.size() == ref.error_table.size() && table_dev <= ref.table_tol;
    result.checks.push_back({"grid error table", table_ok, table_dev, ref.table_tol});

    const double bound = out.bound ? out.bound->value : NAN;
    const double bound_dev = std::abs(bound - ref.bound);
    result.checks.push_back({"error bound value", bound_dev <= ref.bound_tol, bound_dev, ref.bound_tol});

    const double worst = out.max_error().value_or(NAN);
    result.checks.push_back({"grid errors under bound", worst <= bound, worst, bound});
    return result;
}

} // namespace

const std::vector<ReferenceCase>& reference_cases() {
    static const std::vector<ReferenceCase> cases = make_cases();
    return cases;
}

bool CaseResult::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<CaseResult> reproduce_reference(Execution exec) {
    std::vector<std::future<CaseResult>> pending;
    for (const ReferenceCase& ref : reference_cases())
        pending.push_back(std::async(std::launch::async, [&ref, exec] { return check_case(ref, exec); }));
    std::vector<CaseResult> results;
    for (auto& f : pending) results.push_back(f.get());
    return results;
}

void print_case(const CaseResult& result, std::ostream& os) {
    char buf[160];
    os << (result.pass() ? "PASS " : "FAIL ") << result.reference->name << "\n";
    for (const Check& c : result.checks) {
        std::snprintf(buf, sizeof buf, "  %-4s %-26s deviation %.3e  (limit %.3e)\n", c.pass ? "ok" : "DIFF",
                      c.what.c_str(), c.deviation, c.tol);
        os << buf;
    }
    const RunOutput& out = result.output;
    os << "     t        computed error   reference error\n";
    for (std::size_t i = 0; i < out.rows.size(); ++i) {
        const double reference =
            i < result.reference->error_table.size() ? result.reference->error_table[i] : NAN;
        std::snprintf(buf, sizeof buf, "    %.1f    %.9g    %.9g\n", out.rows[i].t, out.rows[i].abs_error.value_or(NAN),
                      reference);
        os << buf;
    }
    if (!result.reference->note.empty()) os << "  note: " << result.reference->note << "\n";
}

} // namespace hybridie
