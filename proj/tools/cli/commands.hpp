#pragma once

#include <ostream>

namespace ddlab::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kFailure = 1,
  kConfigError = 2,
  kQuadratureError = 3,
  kSolverRangeError = 4,
};

/// Entry point of the `ddlab` tool: subcommands signal, storage, min-pulses,
/// compare and mc. Results go to `out` (or --output), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ddlab::cli
