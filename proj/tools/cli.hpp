#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cfp::cli {

/// Runs the `cfp` command line. `args` excludes the program name.
/// Exit codes: 0 success, 1 expectation or parse failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfp::cli
