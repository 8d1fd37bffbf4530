#pragma once

#include <ostream>

namespace sleeproute {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitOk = 0,
    kExitRunError = 1,    ///< solver or simulation failure
    kExitInputError = 2,  ///< bad arguments, missing or invalid scenario
};

/// Entry point for the `sleeproute` tool, with injectable streams.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sleeproute
