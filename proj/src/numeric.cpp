#include "copula_order/numeric.hpp"

#include <string>

namespace copord {

namespace {

struct Stencil {
  double value;
  double noise;
};

Stencil central_stencil(const std::function<double(double)>& f, double t, int order, double h) {
  CompensatedSum acc;
  double mag = 0.0;
  for (int j = 0; j <= order; ++j) {
    const double c = static_cast<double>(binomial(order, j)) * (((order - j) % 2 == 0) ? 1.0 : -1.0);
    const double fj = f(t + (j - 0.5 * order) * h);
    acc.add(c * fj);
    mag += std::abs(c * fj);
  }
  const double hn = std::pow(h, order);
  return {acc.value() / hn, kEpsilon * mag / hn};
}

}  // namespace

DerivativeEstimate central_derivative(const std::function<double(double)>& f, double t, int order,
                                      double lower_bound) {
  if (order < 1) throw RangeError("derivative order must be >= 1, got " + std::to_string(order));
  if (!(t > lower_bound)) throw RangeError("derivative point must lie above the domain bound");
  // First order uses the fixed relative step; higher orders balance truncation
  // against rounding, accounting for the extrapolation from order 3 on.
  const double scale = std::max(1.0, std::abs(t));
  double h = order == 1   ? std::max(1e-6, 1e-6 * std::abs(t))
             : order == 2 ? scale * std::pow(kEpsilon, 0.25)
                          : scale * std::pow(kEpsilon, 1.0 / (order + 4));
  if (std::isfinite(lower_bound)) {
    const double room = 0.9 * 2.0 * (t - lower_bound) / order;
    if (h > room) h = room;
  }
  const Stencil coarse = central_stencil(f, t, order, h);
  if (order < 3) return {coarse.value, coarse.noise};
  const Stencil fine = central_stencil(f, t, order, 0.5 * h);
  return {(4.0 * fine.value - coarse.value) / 3.0, (4.0 * fine.noise + coarse.noise) / 3.0};
}

}  // namespace copord
