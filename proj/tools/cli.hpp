#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bvr::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2, kDivergence = 3 };

/// Entry point for the bvrsim command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bvr::cli
