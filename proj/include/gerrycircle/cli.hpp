#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gerrycircle {

inline constexpr const char* kToolName = "gerrycircle";
inline constexpr const char* kToolVersion = "0.1.0";

/// Runs one CLI invocation. `args` excludes the program name.
/// Returns 0 on success, 2 on validation errors, 1 on internal failures.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gerrycircle
