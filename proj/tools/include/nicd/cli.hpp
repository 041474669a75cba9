#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nicd {

/// Runs the `nicd` command line. `args` excludes the program name. Normal
/// output goes to `out`, diagnostics to `err`. Returns 0 on success, 1 when
/// a stage fails, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nicd
