#pragma once

// The `ncl` command line, callable in-process for tests.

#include <ostream>
#include <string>
#include <vector>

namespace ncl::cli {

enum ExitCode : int { ok = 0, mismatch = 1, invalid_input = 2, over_budget = 3 };

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncl::cli
