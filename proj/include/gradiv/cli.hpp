#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace gradiv::cli {

/// Process exit statuses.
enum ExitCode : int {
    kSuccess = 0,
    kInvalidInput = 1,
    kComputationError = 2,
    kUsage = 64,
};

/// Runs one command line (program name excluded). Writes exactly one JSON run
/// report line to out unless the command line itself is malformed, in which
/// case usage text goes to err and kUsage is returned.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace gradiv::cli
