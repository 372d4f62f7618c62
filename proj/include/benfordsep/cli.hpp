#pragma once

#include <string>
#include <vector>

namespace benfordsep {

inline constexpr const char* kToolVersion = "0.1.0";

/// Runs one CLI invocation (args without the program name) and returns the
/// process exit code: 0 success, 1 I/O failure, 2 malformed input,
/// 3 configuration/data incompatibility.
int run_cli(const std::vector<std::string>& args);

} // namespace benfordsep
