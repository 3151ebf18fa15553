#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bis::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
    kSuccess = 0,
    kNumericFailure = 1,
    kUsageError = 2,
};

// Entry point shared by the `bis` binary and the tests.  args[0] is the
// program name.  Primary output goes to `out` unless --out redirects it.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace bis::cli
