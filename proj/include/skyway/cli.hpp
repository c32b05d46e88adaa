#pragma once

#include <iosfwd>

namespace skyway {

/// Full command-line entry point, testable in-process. Exit codes:
/// 0 success, 2 usage/validation/parse errors, 3 infeasible composition,
/// 4 output I/O failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace skyway
