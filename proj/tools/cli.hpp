#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dioph::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitExecution = 2;

/// Entry point of the `dioph` tool. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dioph::cli
