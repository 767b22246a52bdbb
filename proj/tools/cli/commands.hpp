#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace inferkit::cli {

/// Runs the command line `args` (without the program name). Returns the
/// exit status: 0 on success, 1 on domain errors, 2 on usage errors.
/// Errors are reported on `err` as a single `error:<category>: ...` line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace inferkit::cli
