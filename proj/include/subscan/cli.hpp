#pragma once

#include <string>
#include <vector>

namespace subscan {

/// Exit codes: 0 complete, 1 certificate rejected or internal error,
/// 2 complete with unproven absences, 3 input error, 4 budget exceeded.
int run_cli(int argc, char** argv);
int run_cli(const std::vector<std::string>& args);

}  // namespace subscan
