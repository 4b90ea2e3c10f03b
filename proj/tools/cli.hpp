#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace posa::cli {

// Exit codes: 0 success, 2 usage, 3 I/O, 4 domain/numeric.
enum ExitCode : int { kOk = 0, kUsage = 2, kIo = 3, kDomain = 4 };

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace posa::cli
