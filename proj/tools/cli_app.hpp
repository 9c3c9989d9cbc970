#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace quadwalk::cli {

enum ExitCode { kOk = 0, kUsage = 2, kInput = 3, kNumeric = 4 };

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace quadwalk::cli
