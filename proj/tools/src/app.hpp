#pragma once

#include <iosfwd>

namespace branchcover::cli {

/// Exit codes shared by all commands.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kViolation = 2,
  kCheckFailed = 3,
  kRowErrors = 4,
};

/// Entry point of the `branchcover` tool, with the streams made explicit for tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace branchcover::cli
