#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropicount::cli {

enum ExitCode : int { kPass = 0, kDomainFailure = 1, kInputFailure = 2 };

// Runs the command line `args` (without the program name), writing documents to `out`
// and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropicount::cli
