#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace cvqkd::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNumerical = 2,
  kExitInsufficientData = 3,
};

// Relative --output paths are resolved against this directory when set.
inline constexpr const char* kOutputDirEnv = "CVQKD_OUTPUT_DIR";

// Runs one command line (args excludes the program name). Results go to `out`
// unless --output names a file; failures print one JSON line
// {"error": kind, "message": ...} to `err`.
int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cvqkd::cli
