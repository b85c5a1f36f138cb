#pragma once

#include <iosfwd>

namespace curvcheck::cli {

/// Exit codes: 0 success, 1 mathematical failure (falsified condition or
/// violated inequality), 2 invalid input, 3 numerical or internal failure.
enum ExitCode : int { kOk = 0, kMathFailure = 1, kInputError = 2, kNumericalError = 3 };

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace curvcheck::cli
