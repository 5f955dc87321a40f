#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stumpboost {

// Full command-line entry point, separated from main() so it can be
// driven in-process. args excludes the program name:
//   <gen|train|sweep|bounds|rademacher|margin> <config-file> [--out <dir>]
// The subcommand must match the config's experiment key. Returns 0 on
// success, 2 on configuration errors, 3 on numeric failures, 1 otherwise.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace stumpboost
