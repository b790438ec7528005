#pragma once

#include <vector>

#include "copula_order/generator.hpp"
#include "copula_order/transform.hpp"

namespace copord {

/// A k-out-of-n system: it fails once n−k of its n components have failed.
/// k = 0 is the parallel system and k = n−1 the series system. Component i
/// has lifetime distribution T(params[i], baseline) and the components are
/// coupled by the Archimedean copula of `gen`.
struct SystemSpec {
  int k = 0;
  Generator gen;
  Transform transform;
  Baseline baseline;
  std::vector<double> params;

  int n() const { return static_cast<int>(params.size()); }
  bool is_parallel() const { return k == 0; }
  bool is_series() const { return k == n() - 1; }
  void validate() const;

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

/// Per-component quantities at one x: u_i = T(α_i, F)(x), survival 1 − u_i,
/// and t_i = φ(u_i) after safe-mode clamping.
struct EvalPoint {
  double x = 0.0;
  std::vector<double> u;
  std::vector<double> survival;
  std::vector<double> t;
};

EvalPoint eval_point(const SystemSpec& spec, double x, EvalMode mode = EvalMode::Safe);

/// P(max lifetime ≤ x) = ψ(Σ φ(u_i)).
double parallel_cdf(const SystemSpec& spec, double x, EvalMode mode = EvalMode::Safe);
/// P(min lifetime > x) = ψ(Σ φ(1 − u_i)).
double series_survival(const SystemSpec& spec, double x, EvalMode mode = EvalMode::Safe);
/// CDF of the (n−k)-th order statistic; dispatches k = 0 and k = n−1 to the
/// closed forms above. The series form reads ψ as the survival copula, the
/// others as the copula of the lifetimes; the two coincide only for
/// radially symmetric copulas such as independence.
double koutofn_cdf(const SystemSpec& spec, double x, EvalMode mode = EvalMode::Safe);
/// Inclusion-exclusion form for every k, without dispatch.
double koutofn_cdf_inclusion_exclusion(const SystemSpec& spec, double x, EvalMode mode = EvalMode::Safe);
inline double system_cdf(const SystemSpec& spec, double x, EvalMode mode = EvalMode::Safe) {
  return koutofn_cdf(spec, x, mode);
}
/// Smallest x with system CDF >= p, found by bracketing and bisection.
double system_quantile(const SystemSpec& spec, double p);

/// ∂F/∂α_ℓ from the subset-sum expression of the CDF.
double koutofn_cdf_dparam(const SystemSpec& spec, double x, int ell, EvalMode mode = EvalMode::Safe);
/// ∂F/∂α_ℓ written as forward differences of ψ′ over the other components.
/// For the series form the differences run over φ(1 − u_i).
double koutofn_cdf_dparam_difference_form(const SystemSpec& spec, double x, int ell,
                                          EvalMode mode = EvalMode::Safe);

}  // namespace copord
