#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sinhreg::cli {

// Stable exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

// Runs the command line `args` (without the program name). Output files go to
// --out-dir, else $SINHREG_OUTPUT_DIR, else the working directory.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string build_id();

}  // namespace sinhreg::cli
