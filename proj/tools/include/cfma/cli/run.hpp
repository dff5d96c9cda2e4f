#pragma once

#include <iosfwd>

namespace cfma::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

// Entry point of the cfma tool, usable in-process. Results go to `out` unless
// an output path is configured; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cfma::cli
