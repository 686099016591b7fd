#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rfl::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kAnalysis = 2 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rfl::cli
