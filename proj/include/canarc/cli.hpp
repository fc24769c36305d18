#pragma once

#include <string>
#include <vector>

namespace canarc::cli {

/// Entry point of the command line tool. Returns the process exit code:
/// 0 success / verification pass, 1 verification fail, 2 invalid input,
/// 3 numerical failure.
int run(const std::vector<std::string>& args);

} // namespace canarc::cli
