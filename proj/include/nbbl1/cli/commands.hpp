#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nbbl1::cli {

inline constexpr std::string_view kVersion = "1.0.0";

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotConverged = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name), e.g.
/// {"solve", "--problem", "GENROSE", "--n", "200"}. Output files go to a run
/// directory; its path is printed as "run_dir: <path>" on `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace nbbl1::cli
