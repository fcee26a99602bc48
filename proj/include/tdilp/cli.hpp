#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tdilp::cli {

enum ExitCode : int {
    kOk = 0,
    kNegative = 1,  // infeasible or a false verdict
    kUsage = 2,
    kResourceCap = 3,
};

/// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdilp::cli
