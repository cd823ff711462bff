#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qaplan {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitInputError = 2;

/// Command-line driver. `args` excludes the program name. Results go to
/// --out when given, otherwise to `out`; diagnostics go to `err`.
///
///   qaplan sweep-placement|run|compare|validate --scenario <path>
///          [--seed <int>] [--out <path>] [--format csv|json]
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qaplan
