#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polymc_cli/record.hpp"

namespace polymc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitStrict = 4;

/// Runs one subcommand from fully resolved parameters. Throws polymc::Error
/// subclasses on invalid input.
RunRecord execute(const Params& p);

/// True when a strict run must fail on this record's hypothesis flags.
bool hypotheses_fail(const RunRecord& r);

/// Renders a record in the requested format. Text mode omits wall time.
std::string render(const RunRecord& r, const std::string& format);

/// Parses argv (without the program name), runs, and writes the record to
/// `out` and diagnostics to `err`. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polymc::cli
