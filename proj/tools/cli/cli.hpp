#pragma once

#include <iosfwd>

namespace rcdyn::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kCapExceeded = 3,
  kVerificationFailed = 4,
};

/// Parses `argv` (program name first) and runs the selected subcommand.
/// Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rcdyn::cli
