#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tvcat::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2, kSizeCap = 3 };

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tvcat::cli
