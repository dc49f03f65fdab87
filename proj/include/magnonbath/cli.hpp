// cli.hpp — command-line front end: subcommand dispatch, sweeps, CSV/JSON output.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace magnonbath::cli {

// Runs one invocation; args excludes the program name.  Returns the process
// exit code: 0 success, 2 usage error, 3 domain or singularity error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace magnonbath::cli
