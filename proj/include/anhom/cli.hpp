#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anhom {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoViableCoevent = 1;
inline constexpr int kExitInputError = 2;

/// Entry point of the `anhom` tool. `args[0]` is the program name.
/// Subcommands: solve, preclusions, eval, infer, check.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anhom
