#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frob::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kInputError = 2 };

// `args` excludes the program name. JSON goes to `out` with --json, a table
// otherwise; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frob::cli
