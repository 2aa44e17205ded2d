// Command-line entry point. Exit codes: 0 success, 1 golden or validation
// failure, 2 usage error, 3 computation error.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xaic::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitComputation = 3;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xaic::cli
