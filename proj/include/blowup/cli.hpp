#pragma once

/// \file cli.hpp
/// \brief Experiment driver behind the `blowup` executable.
///
/// Every subcommand emits one JSON report with "schema", "version",
/// "command", "seed", the effective "config", a "result" object and a
/// "failures" array. Feeding a report back through --config reruns it.

#include <iosfwd>
#include <string>
#include <vector>

namespace blowup::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitPropertyFailure = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blowup::cli
