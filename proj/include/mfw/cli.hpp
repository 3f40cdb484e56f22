#pragma once

#include <string>
#include <vector>

namespace mfw {

// Full command-line front end.  args excludes the program name.
// Exit codes: 0 success, 1 usage/parse/pairing errors, 2 solver failures,
// 3 verification failures (inequality violations or oracle deviations).
int run_cli(const std::vector<std::string>& args);

}  // namespace mfw
