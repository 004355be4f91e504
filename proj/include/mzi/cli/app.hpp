#pragma once

#include <iosfwd>

namespace mzi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

// Full command-line entry point. Results go to `out` unless --out names a
// file; diagnostics and warnings go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mzi::cli
