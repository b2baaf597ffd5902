#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opetope::cli {

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Runs the command line in-process. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opetope::cli
