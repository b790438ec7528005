#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <vector>

#include "copula_order/kernels.hpp"
#include "copula_order/mc.hpp"

namespace copord::kernels::detail {

inline double schur_at(const SystemSpec& spec, double x, int ell, int m, EvalMode mode) {
  const double al = spec.params[static_cast<std::size_t>(ell)];
  const double am = spec.params[static_cast<std::size_t>(m)];
  if (al == am) return 0.0;
  return (al - am) * (koutofn_cdf_dparam(spec, x, ell, mode) - koutofn_cdf_dparam(spec, x, m, mode));
}

inline void check_pair(const SystemSpec& spec, int ell, int m) {
  spec.validate();
  if (ell < 0 || m < 0 || ell >= spec.n() || m >= spec.n()) {
    throw RangeError("Schur pair indices must lie in [0, n)");
  }
}

// Row r of a system sample: lifetimes into `life` (n slots) and returns the
// (n−k)-th smallest.
inline double sample_row(const SystemSpec& spec, std::uint64_t seed, std::size_t r, double* life,
                         std::vector<double>& scratch) {
  CounterRng rng(seed, r);
  const auto n = static_cast<std::size_t>(spec.n());
  scratch.resize(n);
  sample_copula_row(spec.gen, rng, scratch);
  // The series form couples survivals: U_i = 1 − T(α_i, F)(X_i).
  const bool survival = spec.is_series() && !spec.is_parallel();
  for (std::size_t i = 0; i < n; ++i) {
    const double v = survival ? 1.0 - scratch[i] : scratch[i];
    const double u = std::clamp(v, DBL_MIN, 1.0 - DBL_EPSILON / 2);
    life[i] = transform_quantile(spec.transform, spec.baseline, spec.params[i], u);
  }
  scratch.assign(life, life + n);
  const auto pos = static_cast<std::ptrdiff_t>(n - static_cast<std::size_t>(spec.k) - 1);
  std::nth_element(scratch.begin(), scratch.begin() + pos, scratch.end());
  return scratch[static_cast<std::size_t>(pos)];
}

}  // namespace copord::kernels::detail
