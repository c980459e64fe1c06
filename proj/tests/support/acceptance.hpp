#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace hagkit::testing {

struct SubCheck {
    std::string name;
    double error = 0.0;
    double tolerance = 0.0;
    bool ok = false;
    std::string note;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::vector<SubCheck> checks;
    std::string error_message;  // set when the criterion threw
    double seconds = 0.0;
};

struct AcceptanceOptions {
    int workers = 1;
    std::size_t bench_points = 10000;
    bool verbose = false;  // print every sub-check, not only failures
};

constexpr int kCriterionCount = 13;

CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});

// "PASS  3  orthonormality-moyal  worst 2.1e-03 of tolerance  (0.8 s)" plus
// indented sub-check lines.
std::string format_result(const CriterionResult& r, bool verbose);

// Runs the given criteria (all when empty), streaming lines to out.
// Returns the number of failures.
int run_acceptance(const std::vector<int>& ids, const AcceptanceOptions& opt, std::ostream& out);

}  // namespace hagkit::testing
