#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phaseswitch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand (`steady`, `simulate`, `sweep`, `linear`, `params`,
/// `pulse-check`). `args` excludes the program name. The artifact goes to
/// `out` (or the --out file) only when the whole run succeeds; diagnostics
/// go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phaseswitch::cli
