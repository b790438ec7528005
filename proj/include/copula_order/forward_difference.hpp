#pragma once

#include <functional>
#include <span>
#include <vector>

namespace copord {

/// Base point x and positive increments (h_1, ..., h_m) of Δ_{h_1..h_m} g(x).
struct FDStencil {
  double base = 0.0;
  std::vector<double> increments;

  void validate() const;
};

/// Δ_{h_1..h_m} g(x) = Σ_{S ⊆ {1..m}} (−1)^{m−|S|} g(x + Σ_{i∈S} h_i), enumerated
/// in Gray-code order with compensated sums. m ≤ 25.
double forward_difference(const std::function<double(double)>& g, const FDStencil& stencil);

/// Same quantity computed by applying Δ_{h_i} one increment at a time.
/// Exponential in m; intended as a cross-check.
double iterated_forward_difference(const std::function<double(double)>& g, const FDStencil& stencil);

}  // namespace copord
