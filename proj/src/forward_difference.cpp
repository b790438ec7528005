#include "copula_order/forward_difference.hpp"

#include <cmath>
#include <string>

#include "copula_order/numeric.hpp"

namespace copord {

void FDStencil::validate() const {
  if (!std::isfinite(base)) throw RangeError("forward difference base must be finite");
  if (increments.size() > static_cast<std::size_t>(kMaxSubsetItems)) {
    throw ResourceError("forward difference order limited to " + std::to_string(kMaxSubsetItems) + ", got " +
                        std::to_string(increments.size()));
  }
  for (double h : increments) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw RangeError("forward difference increments must be positive and finite, got " + std::to_string(h));
    }
  }
}

double forward_difference(const std::function<double(double)>& g, const FDStencil& stencil) {
  stencil.validate();
  const int m = static_cast<int>(stencil.increments.size());
  CompensatedSum total;
  for_each_subset_sum(stencil.increments, [&](std::uint32_t, int size, double sum) {
    const double v = g(stencil.base + sum);
    if ((m - size) % 2 == 0) {
      total.add(v);
    } else {
      total.subtract(v);
    }
  });
  return total.value();
}

namespace {

double iterate(const std::function<double(double)>& g, std::span<const double> h, double x) {
  if (h.empty()) return g(x);
  const auto rest = h.subspan(1);
  return iterate(g, rest, x + h[0]) - iterate(g, rest, x);
}

}  // namespace

double iterated_forward_difference(const std::function<double(double)>& g, const FDStencil& stencil) {
  stencil.validate();
  return iterate(g, stencil.increments, stencil.base);
}

}  // namespace copord
