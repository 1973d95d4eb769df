#pragma once

#include <string>
#include <vector>

namespace cmair::cli {

// Executes one CLI invocation (argv without the program name).
// Exit codes: 0 success, 2 configuration/usage error, 1 runtime failure.
int run(const std::vector<std::string>& args);

}  // namespace cmair::cli
