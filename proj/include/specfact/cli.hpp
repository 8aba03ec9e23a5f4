// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace specfact::cli {

enum ExitCode : int {
  ok = 0,
  parse_error = 1,
  precondition_error = 2,
  numerical_error = 3,
  check_failed = 4,
};

/// Runs one command line (args[0] is the program name). Results go to out,
/// failures to err as a single line "error kind=<kind> message=\"...\"".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specfact::cli
