#pragma once

#include <iosfwd>

namespace uce {

inline constexpr int kExitPass = 0;
inline constexpr int kExitMathFailure = 1;
inline constexpr int kExitConfigError = 2;

/// Entry point of the uce_lab tool. Reports go to `out` (or --output),
/// diagnostics to `err`. Returns 0 when every requested check passes, 1 on a
/// failed mathematical check and 2 on configuration or IO errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uce
