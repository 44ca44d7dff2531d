#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace crw::cli {

enum ExitCode : int {
  kPass = 0,
  kInvariantFailure = 1,
  kNoConvergence = 2,
  kBadUsage = 64,
};

/// Entry point behind the `crw` executable. Data goes to `out` unless --out
/// names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crw::cli
