#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace linfty::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_usage = 2;

/// Runs one command line (args excludes the program name) and returns the
/// exit code: 0 pass, 1 verified-false, 2 usage or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linfty::cli
