#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace entropia::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;

/// Runs one invocation with `args` excluding the program name. Rows go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace entropia::cli
