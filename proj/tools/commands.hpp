#ifndef ISOPART_TOOLS_COMMANDS_HPP_
#define ISOPART_TOOLS_COMMANDS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace isopart::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kFormatVersion = "1";

/// Exit codes: 0 success, 1 failed verdict or unexpected error,
/// 2 precondition violation, 3 numerical non-convergence.
enum ExitCode : int { kOk = 0, kFailed = 1, kPrecondition = 2, kNonConvergence = 3 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isopart::cli

#endif  // ISOPART_TOOLS_COMMANDS_HPP_
