#include <algorithm>
#include <cmath>
#include <string>

#include "copula_order/ordering.hpp"

namespace copord {

bool majorizes(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw RangeError("majorization needs vectors of equal length, got " + std::to_string(a.size()) + " and " +
                     std::to_string(b.size()));
  }
  if (a.empty()) throw RangeError("majorization needs nonempty vectors");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double scale = 1.0;
  for (std::size_t i = 0; i < sa.size(); ++i) scale = std::max({scale, std::abs(sa[i]), std::abs(sb[i])});
  const double tol = 1e-12 * scale * static_cast<double>(sa.size());
  CompensatedSum pa;
  CompensatedSum pb;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    pa.add(sa[i]);
    pb.add(sb[i]);
    if (i + 1 < sa.size() && pa.value() > pb.value() + tol) return false;
  }
  return std::abs(pa.value() - pb.value()) <= tol;
}

void BoxConstraint::validate() const {
  if (n < 1) throw RangeError("box constraint needs n >= 1, got " + std::to_string(n));
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw RangeError("box constraint needs a < b");
  if (!(c >= n * a && c < n * b)) {
    throw RangeError("box constraint needs c in [n*a, n*b) = [" + std::to_string(n * a) + ", " +
                     std::to_string(n * b) + "), got c=" + std::to_string(c));
  }
}

ExtremalConfig extremal_config(const BoxConstraint& box) {
  box.validate();
  const auto [a, b, c, n] = box;
  const auto eta_for = [&](int q) { return c - q * b - (n - q - 1) * a; };
  int q = static_cast<int>(std::floor((c - n * a) / (b - a)));
  q = std::clamp(q, 0, n - 1);
  if (q + 1 <= n - 1 && eta_for(q) >= b) ++q;
  if (q > 0 && eta_for(q) < a) --q;
  ExtremalConfig e;
  e.q = q;
  e.eta = std::clamp(eta_for(q), a, b);
  e.alpha_star.assign(static_cast<std::size_t>(n - q - 1), a);
  e.alpha_star.push_back(e.eta);
  e.alpha_star.insert(e.alpha_star.end(), static_cast<std::size_t>(q), b);
  e.alpha_bar.assign(static_cast<std::size_t>(n), c / n);
  return e;
}

nlohmann::json to_json(const ExtremalConfig& e) {
  return {{"q", e.q}, {"eta", e.eta}, {"alpha_star", e.alpha_star}, {"alpha_bar", e.alpha_bar}};
}

}  // namespace copord
