#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qtomo::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kNumericalFailure = 3,
  kIncompleteProtocol = 4,
};

/// Runs one command line (without the program name). Diagnostics go to `err`,
/// short human-readable summaries to `out`; results are written under --out.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qtomo::cli
