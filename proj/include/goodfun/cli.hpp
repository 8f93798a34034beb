#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace goodfun::cli {

enum ExitCode : int { ok = 0, domain_error = 2, tolerance_failure = 3 };

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Round-trip formatting used in every CSV and JSON number.
std::string format_number(double v);

}  // namespace goodfun::cli
