#pragma once

#include <string>
#include <vector>

namespace tlab {

struct CriterionResult {
    int index = 0;       // 1..14
    std::string name;    // short slug
    bool pass = false;
    double seconds = 0;
    std::string detail;  // measured values, one line
};

inline constexpr int kNumCriteria = 14;

// Run one acceptance criterion (1-based).
CriterionResult run_criterion(int index);

// Suites exposed by the `reproduce` command; "all" covers every criterion.
std::vector<std::string> suite_names();
std::vector<int> criteria_for_suite(const std::string& suite);

// Run a suite, print one PASS/FAIL line per criterion, return overall pass.
bool run_suite_printed(const std::string& suite);

} // namespace tlab
