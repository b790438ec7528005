#pragma once

#include <ostream>

#include "copula_order/system.hpp"

namespace copord {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitNumeric = 1, kExitUsage = 2 };

/// Runs the copula-order command line. Reports go to `out` unless `--out`
/// names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Reference configuration: 2-out-of-3, Clayton γ=1, PHR over a standard
/// exponential, α = (1, 2.5, 4).
SystemSpec fig1_spec();

/// x_j = 10 j / points for j = 1..points.
std::vector<double> fig1_grid(int points = 400);

}  // namespace copord
