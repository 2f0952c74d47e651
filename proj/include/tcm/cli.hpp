#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tcm::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kInternal = 3 };

/// Runs the command line (without the program name). Reports go to the
/// files named by --out / --csv, the summary table to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcm::cli
