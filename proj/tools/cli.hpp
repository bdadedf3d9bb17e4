#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace snl {

/// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;

/// Runs one subcommand. `args` excludes the program name. Results go to
/// `out` (or the --out file); errors go to `err` as a JSON object.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace snl
