#pragma once

#include <ostream>

namespace qw2d {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitVerifyFailure = 1,
  kExitConfigError = 2,
  kExitIoError = 3,
};

// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qw2d
