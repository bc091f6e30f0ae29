#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flatspec::cli {

/// Runs the command line (without the program name). Returns the process
/// exit code: 0 equivalent / success, 1 distinguished, 2 error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flatspec::cli
