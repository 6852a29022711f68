#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmc::cli {

/// Exit codes of the qmc tool.
enum ExitCode : int {
  kOk = 0,
  kParseError = 1,  // malformed input, bad flags
  kResourceError = 2,
  kMismatch = 3,  // verify found differing prime sets
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmc::cli
