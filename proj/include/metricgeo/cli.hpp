#pragma once

// Command-line front end. Exit codes: 0 success, 2 usage error or malformed
// input, 3 domain violation, 4 verification failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace metricgeo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitVerify = 4;

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metricgeo::cli
