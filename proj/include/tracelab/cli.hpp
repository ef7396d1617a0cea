#pragma once

#include <string>
#include <vector>

namespace tracelab {

// Exit codes: 0 success, 1 declared infeasibility, 2 usage error.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace tracelab
