#pragma once

#include <string>
#include <vector>

namespace rainbow {

/// The command-line surface: gen / solve / verify / oracle / selftest /
/// bench. argv[0] is the program name. Exit codes: 0 success, 1 verification
/// failure or invariant violation, 2 input error.
int run_cli(const std::vector<std::string>& argv);

}  // namespace rainbow
