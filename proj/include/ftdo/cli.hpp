#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ftdo::cli {

enum ExitCode : int { ok = 0, mismatch = 1, usage = 2, io_failure = 3 };

/// Runs one command. args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ftdo::cli
