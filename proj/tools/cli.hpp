#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rs::cli {

inline constexpr int kExitClean = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDetected = 2;

// Runs the command line (args excludes the program name). Diagnostics go to
// `err`, reports to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rs::cli
