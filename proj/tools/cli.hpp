#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ghz::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInfeasible = 1,
  kInputError = 2,
};

/// Runs the command line `args` (without the program name). Output goes to
/// `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Significant digits for text output; GHZ_PRECISION overrides the default 12.
int output_precision();

/// printf-style %.*g with the C locale's '.' separator.
std::string format_number(double v, int precision);

}  // namespace ghz::cli
