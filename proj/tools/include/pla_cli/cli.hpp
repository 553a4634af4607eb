#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pla::cli {

// Runs the command line `args` (without the program name). Results go to
// `out` (or the --out file), diagnostics to `err`. Returns the exit status:
// 0 on success, 1 on a library error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pla::cli
