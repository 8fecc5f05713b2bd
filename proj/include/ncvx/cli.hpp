// cli.hpp — command-line front end: seeded verification campaigns, constant
// reproduction, machine-readable reports.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncvx::cli {

/// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or
/// resource error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncvx::cli
