#pragma once

#include <iosfwd>

#include "streamcolor/error.hpp"

namespace streamcolor {

/// Process exit codes.
namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;         // verify found a problem, or a generic failure
inline constexpr int kInfeasible = 2;     // gen: spec cannot be realized
inline constexpr int kBadStream = 3;      // mode mismatch, degree or simplicity violation
inline constexpr int kBoundViolation = 4; // a probabilistic bound did not hold
inline constexpr int kParseError = 5;     // unreadable input or output file
}  // namespace exit_code

int exit_code_for(ErrorCode code);

/// Entry point of the `streamcolor` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace streamcolor
