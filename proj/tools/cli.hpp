#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flag::cli {

enum ExitCode : int { kOk = 0, kToleranceFail = 1, kUsage = 2, kIoFormat = 3 };

/// Runs the command line (args excludes the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double v);

} // namespace flag::cli
