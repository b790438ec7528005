#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "copula_order/transform.hpp"

namespace copord {

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_double(double v);

/// Writes a header line and then one row per index of the equally long columns.
void write_columns(std::ostream& os, std::span<const std::string> header,
                   std::span<const std::vector<double>> columns);

/// Reads a two-column `x,F` CSV (a header line is skipped) as a tabulated baseline.
Baseline load_tabulated_csv(const std::filesystem::path& path);

}  // namespace copord
