#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ringxfer::cli {

inline constexpr std::string_view kVersion = "0.1.0";

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidationFailed = 1;
inline constexpr int kBadArguments = 2;
inline constexpr int kHorizonViolation = 3;

/// Angle in radians from a number or one of the literals pi, pi/k, -pi/k.
double parse_angle(std::string_view text);

/// Runs one command line (args excludes the program name). CSV goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ringxfer::cli
