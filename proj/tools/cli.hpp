#pragma once

#include <iosfwd>

namespace amalgam::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvalid = 2,
  kInvariantBreach = 3,
};

/// Runs the amalgam command line with the given arguments, writing
/// human-readable output to `out` and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace amalgam::cli
