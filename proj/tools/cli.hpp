#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cpdigraph::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kIo = 3,
};

/// Runs one command line (without the program name) and returns the exit
/// code. Regular output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cpdigraph::cli
