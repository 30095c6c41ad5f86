#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace arrangeatlas::cli {

enum ExitCode : int { kSuccess = 0, kDomainError = 1, kUsageError = 2 };

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out` as a single JSON line (DOT for hasse-dot); usage text and CLI
/// parser diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arrangeatlas::cli
