#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace choquet {

/// Runs one CLI invocation. Data goes to `out`, diagnostics to `err`.
/// Returns 0 on success, 1 on validation failures (or, with --strict, on
/// negative verdicts), 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace choquet
