#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace paekit::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

/// Runs one invocation. `args` excludes the program name. Files named by
/// --out are written to disk; without --out the primary output goes to `out`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace paekit::cli
