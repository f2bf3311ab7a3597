#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lumen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 2;
inline constexpr int kExitParams = 3;
inline constexpr int kExitMismatch = 4;

// Runs the command line (args excludes the program name). Results go to
// out, one-line diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lumen::cli
