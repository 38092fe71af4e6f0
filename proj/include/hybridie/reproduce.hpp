#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hybridie/runner.hpp"

namespace hybridie {

/// A reference worked example: problem text plus the coefficient vector,
/// grid error table (t = 0.0, 0.1, ..., 0.9) and error bound it reports.
struct ReferenceCase {
    std::string name;
    std::string problem_text;
    std::optional<double> bound_m;  // M used for the reference bound
    std::vector<double> coefficients;
    double coefficient_tol;
    std::vector<double> error_table;
    double table_tol;
    double bound;
    double bound_tol;
    std::string note;  // known caveat, printed alongside the diff
};

const std::vector<ReferenceCase>& reference_cases();

struct Check {
    std::string what;
    bool pass;
    double deviation;
    double tol;
};

struct CaseResult {
    const ReferenceCase* reference;
    RunOutput output;
    std::vector<Check> checks;

    bool pass() const;
};

/// Runs every reference case (concurrently) and diffs against the stored
/// values.
std::vector<CaseResult> reproduce_reference(Execution exec = Execution::parallel);

void print_case(const CaseResult& result, std::ostream& os);

} // namespace hybridie
