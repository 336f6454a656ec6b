// Command-line front end shared by the `alds` executable and the tests.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alds::cli {

inline constexpr int kExitAnalysisOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;

/// `args` excludes the program name. Results go to `out` (or the files named
/// by --output / --dataset / --curve), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace alds::cli
