#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sdesign {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,   // verification failed, budget exhausted, or bound mismatch
  kExitUsage = 2,         // bad flags, unreadable or unwritable files, malformed input
  kExitNotConstructible = 3,
};

// `args` excludes the program name. Data goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdesign
