#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sinhreg::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast invariant suite: cardinal matrices, window normalization, the window
// Fourier transform against quadrature, uniform reduction and node exactness.
std::vector<CheckResult> run_selftest();

// Prints one PASS/FAIL line per check; returns true when all passed.
bool print_selftest(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace sinhreg::cli
