#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace magnitude::cli {

// Dispatches one subcommand; returns the process exit code.
// 0: success (including defined outcomes like singular zeta);
// 1: mathematical verdict failure (campaign violations, failed search);
// 2: input error (bad flags, malformed or invalid files).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace magnitude::cli
