#include "copula_order/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace copord {

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 1) throw RangeError("grid needs at least one point, got " + std::to_string(points));
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi)) throw RangeError("grid bounds must satisfy lo <= hi");
  std::vector<double> xs(static_cast<std::size_t>(points));
  if (points == 1) {
    xs[0] = lo;
    return xs;
  }
  for (int j = 0; j < points; ++j) xs[static_cast<std::size_t>(j)] = lo + (hi - lo) * j / (points - 1);
  xs.back() = hi;
  return xs;
}

std::vector<double> quantile_grid(std::span<const SystemSpec> systems, int points) {
  if (systems.empty()) throw RangeError("quantile grid needs at least one system");
  if (points < 1) throw RangeError("grid needs at least one point, got " + std::to_string(points));
  struct Comp {
    const SystemSpec* spec;
    double param;
  };
  std::vector<Comp> comps;
  for (const SystemSpec& s : systems) {
    s.validate();
    for (double a : s.params) comps.push_back({&s, a});
  }
  const auto mixture = [&](double x) {
    double acc = 0.0;
    for (const Comp& c : comps) acc += transform_cdf(c.spec->transform, c.spec->baseline, c.param, x);
    return acc / static_cast<double>(comps.size());
  };
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(points));
  for (int j = 0; j < points; ++j) {
    const double p = (j + 0.5) / points;
    double lo = kInfinity;
    double hi = -kInfinity;
    for (const Comp& c : comps) {
      const double q = transform_quantile(c.spec->transform, c.spec->baseline, c.param, p);
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (mixture(mid) >= p) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    xs.push_back(hi);
  }
  return xs;
}

}  // namespace copord
