#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace primstab {

// Exit codes: 0 all checks pass, 1 violation found, 2 input or precondition error.
enum ExitCode : int { kOk = 0, kViolation = 1, kInputError = 2 };

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primstab
