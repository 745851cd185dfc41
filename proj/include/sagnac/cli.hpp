#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sagnac {

/// Full command-line front end. `args` excludes the program name. Normal
/// output goes to `out`, diagnostics to `err`. Returns the process exit
/// code: 0 on success, 1 on usage errors, 2 on data or physics errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sagnac
