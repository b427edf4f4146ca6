#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phaselab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitUsage = 64;

// args excludes the program name. Results go to `out` (or to --out files),
// progress and diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_command(int argc, const char* const* argv);

}  // namespace phaselab::cli
