#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace incbessel {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;  ///< worst deviation and where it occurred
};

/// Cross-checks between the recurrence, the symbolic and sum-based
/// constructions and quadrature.
[[nodiscard]] std::vector<SuiteResult> run_selftest();

/// One line per suite; returns true when every suite passed.
bool print_selftest(std::ostream& os, const std::vector<SuiteResult>& results);

}  // namespace incbessel
