#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nielsenkit::cli {

// Exit codes: 0 ok, 1 module error (JSON on stderr), 2 usage error.
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one `nkit` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nielsenkit::cli
