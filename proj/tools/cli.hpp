#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace r22sdf::cli {

// Stable exit-code contract.
enum ExitCode : int {
  kSuccess = 0,
  kCounterexample = 1,
  kConfigError = 2,
  kIoError = 3,
};

// Entry point for `r22sdf <subcommand> ...`; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace r22sdf::cli
