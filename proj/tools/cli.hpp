#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vmp::cli {

// Exit codes: 0 success or feasible, 1 analytic infeasibility, 2 input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitInput = 2;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string default_config_dir();

}  // namespace vmp::cli
