#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace voa {

inline constexpr int kJsonSchemaVersion = 1;

// Runs the voa command line; args excludes the program name.
// Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace voa
