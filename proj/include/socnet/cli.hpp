#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace socnet::cli {

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;    // bad flags, config or precondition
inline constexpr int kExitRuntime = 2;  // IO, parse or generator failure

/// Runs one subcommand (`generate`, `fit`, `select`, `rank`, `sample`,
/// `spread`, `sweep`). `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);

}  // namespace socnet::cli
