#pragma once

#include <iosfwd>

namespace cosetlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line. Exit codes: 0 success, 2 usage or validation error,
// 1 internal error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cosetlab::cli
