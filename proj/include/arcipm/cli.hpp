#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arcipm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotOptimal = 1;
inline constexpr int kExitInputError = 2;

/// Entry point behind the `arcipm` executable. `args` excludes the program
/// name. Subcommands: solve, generate, bench, verify.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arcipm::cli
