#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace incbessel::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNotConverged = 1;  // also a failed self-test
inline constexpr int kUsage = 2;
inline constexpr int kDomain = 3;
inline constexpr int kIo = 4;

/// Environment variable overriding the default convergence tolerance.
inline constexpr const char* kTolEnv = "INCBESSEL_TOL";

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace incbessel::cli
