#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>

#include "copula_order/errors.hpp"

namespace copord {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

/// Largest item count accepted by any 2^n subset enumeration.
inline constexpr int kMaxSubsetItems = 25;

/// Neumaier-compensated running sum. Supports subtraction, which the
/// Gray-code subset walks rely on.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void subtract(double x) { add(-x); }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// log(1 - e^{-a}) for a > 0.
inline double log1mexp(double a) {
  return a < 0.6931471805599453 ? std::log(-std::expm1(-a)) : std::log1p(-std::exp(-a));
}

/// log(e^{a} - 1) for a > 0.
inline double logexpm1(double a) {
  return a > 30.0 ? a + std::log1p(-std::exp(-a)) : std::log(std::expm1(a));
}

/// log(1 + e^{a}).
inline double softplus(double a) {
  return a > 0.0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a));
}

/// Exact binomial coefficient for the small arguments used by subset sums.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

/// Walks every subset of `values` in Gray-code order and calls
/// `visit(mask, size, sum)`. The running sum is compensated; infinite members
/// are counted separately so the sum is +inf exactly when the subset holds one.
template <class Visit>
void for_each_subset_sum(std::span<const double> values, Visit&& visit) {
  const int m = static_cast<int>(values.size());
  if (m > kMaxSubsetItems) {
    throw ResourceError("subset enumeration limited to " + std::to_string(kMaxSubsetItems) +
                        " items, got " + std::to_string(m));
  }
  CompensatedSum sum;
  int infinite = 0;
  std::uint32_t mask = 0;
  visit(mask, 0, 0.0);
  const std::uint32_t total = std::uint32_t{1} << m;
  for (std::uint32_t i = 1; i < total; ++i) {
    const int bit = std::countr_zero(i);
    const std::uint32_t flag = std::uint32_t{1} << bit;
    const double v = values[static_cast<std::size_t>(bit)];
    mask ^= flag;
    const bool added = (mask & flag) != 0;
    if (std::isinf(v)) {
      infinite += added ? 1 : -1;
    } else if (added) {
      sum.add(v);
    } else {
      sum.subtract(v);
    }
    visit(mask, std::popcount(mask), infinite > 0 ? kInfinity : sum.value());
  }
}

struct DerivativeEstimate {
  double value = 0.0;
  /// Rounding-noise bound on `value`; signs inside ±noise are not meaningful.
  double noise = 0.0;
};

/// Central-difference estimate of f^{(order)}(t), order >= 1. Orders >= 3 use
/// one level of Richardson extrapolation. When `lower_bound` is finite the
/// stencil is shrunk so that every node stays strictly above it.
DerivativeEstimate central_derivative(const std::function<double(double)>& f, double t, int order,
                                      double lower_bound = -kInfinity);

}  // namespace copord
