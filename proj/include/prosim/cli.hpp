#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prosim {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,  // assertion or invariant failure
  kExitUsage = 2,   // usage, parse or config error
};

/// Entry point behind the `prosim` executable. `args` excludes the program
/// name.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prosim
