#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sicsimplex::cli {

inline constexpr int kExitOk = 0;
/// A tolerance check failed, the search did not converge, or input was rejected.
inline constexpr int kExitCheckFailed = 1;
/// Bad command line.
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. Artifacts go to
/// --out (or `out` when absent); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sicsimplex::cli
