#pragma once

#include <span>
#include <vector>

#include "copula_order/system.hpp"

namespace copord {

inline constexpr int kDefaultGridPoints = 400;

/// `points` equally spaced values from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, int points);

/// Quantiles at p_j = (j + 0.5)/points of the equal-weight mixture of every
/// component distribution of every system.
std::vector<double> quantile_grid(std::span<const SystemSpec> systems, int points = kDefaultGridPoints);

}  // namespace copord
