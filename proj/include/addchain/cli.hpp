#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace addchain::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitResource = 2;
inline constexpr int kExitUsage = 64;

/// Parses a real r: a decimal literal, or `c/logm:<c>` meaning c m / log m.
std::optional<double> parse_r(std::string_view text, int m);

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace addchain::cli
