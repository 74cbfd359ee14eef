#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace epistemic::cli {

enum ExitCode : int {
  kPass = 0,
  kFail = 1,
  kUsage = 2,
};

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace epistemic::cli
