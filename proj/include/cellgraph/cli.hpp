#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cellgraph::cli {

inline constexpr const char* kVersion = "0.3.0";

// Exit codes: 0 success, 1 usage error, 2 data error.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDataError = 2;

// Runs one subcommand. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cellgraph::cli
