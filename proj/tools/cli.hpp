#pragma once

#include <ostream>

namespace oodscreen::cli {

inline constexpr int kOk = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kDataError = 2;
inline constexpr int kComputationError = 3;

/// Entry point of the oodscreen tool. Errors are reported as a single line
/// "oodscreen: error: <Kind>: <message>" on err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace oodscreen::cli
