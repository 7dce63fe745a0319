#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gaffine::cli {

inline constexpr int kExitOk = 0;
/// A requested check failed (verify sweep law violation).
inline constexpr int kExitCheckFailed = 1;
/// Usage, parse or domain error.
inline constexpr int kExitError = 2;
/// classify on a curve whose curvature is not constant.
inline constexpr int kExitNotConstant = 3;

/// Runs the command line `args` (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gaffine::cli
