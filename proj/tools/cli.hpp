#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace obeta::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kVerifyFailed = 3,
  kPrecisionWarning = 4,
};

/// Runs the command line front end. argv[0] is the program name. Output goes
/// to `out`, diagnostics to `err`; the return value is the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Convenience overload; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace obeta::cli
