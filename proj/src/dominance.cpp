#include <algorithm>
#include <cmath>
#include <string>

#include "copula_order/grid.hpp"
#include "copula_order/kernels.hpp"
#include "copula_order/ordering.hpp"

namespace copord {

std::string_view sign_class_name(SignClass c) {
  switch (c) {
    case SignClass::NonNegative: return "nonnegative";
    case SignClass::NonPositive: return "nonpositive";
    case SignClass::Zero: return "zero";
    case SignClass::SignChanging: return "sign-changing";
  }
  return "?";
}

SignClass classify_signs(std::span<const double> values, double tolerance) {
  bool pos = false;
  bool neg = false;
  for (double v : values) {
    pos = pos || v > tolerance;
    neg = neg || v < -tolerance;
  }
  if (pos && neg) return SignClass::SignChanging;
  if (pos) return SignClass::NonNegative;
  if (neg) return SignClass::NonPositive;
  return SignClass::Zero;
}

SchurCurve schur_scan(const SystemSpec& spec, std::span<const double> xs, int ell, int m, EvalMode mode) {
  SchurCurve c;
  c.x.assign(xs.begin(), xs.end());
  c.d = kernels::schur_grid_parallel(spec, xs, ell, m, mode);
  c.sign = classify_signs(c.d);
  return c;
}

std::string_view relation_name(Relation r) {
  switch (r) {
    case Relation::Dominates: return "Dominates";
    case Relation::DominatedBy: return "DominatedBy";
    case Relation::Crossing: return "Crossing";
    case Relation::Indistinguishable: return "Indistinguishable";
  }
  return "?";
}

std::string_view justification_name(Justification j) {
  switch (j) {
    case Justification::ThmMain0: return "Thm-main0";
    case Justification::ThmMain1: return "Thm-main1";
    case Justification::ThmMain0Min: return "Thm-main0min";
    case Justification::ThmMain1Min: return "Thm-main1min";
    case Justification::ThmKoutofnCoordinatewise: return "Thm-koutofn-coordinatewise";
    case Justification::NumericOnly: return "NumericOnly";
  }
  return "?";
}

namespace {

// Sorted a ≤ sorted b entrywise. The system CDFs are symmetric in the
// parameters, so comparing sorted vectors is equivalent to finding a matching.
bool coordinatewise_le(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

bool superadditive(const Generator& inner_psi, const Generator& outer_phi) {
  return check_superadditive(inner_psi, outer_phi).pass;
}

bool v_monotone(const Generator& gen, const SystemSpec& s, const std::vector<double>& hull_of, VVariant variant,
                Direction dir, std::span<const double> xs) {
  const auto [lo, hi] = std::minmax_element(hull_of.begin(), hull_of.end());
  const std::vector<double> betas = uniform_grid(*lo, *hi, *lo == *hi ? 1 : 64);
  // Only x where T stays strictly inside (0,1) over the whole β range; T is
  // monotone in β, so the two ends decide. Elsewhere V has no double value.
  const auto interior = [&](double beta, double x) {
    const ComponentValue c = transform_component(s.transform, s.baseline, beta, x);
    return c.cdf >= kClampLow && c.survival >= kClampLow;
  };
  std::vector<double> xsub;
  const std::size_t stride = std::max<std::size_t>(1, xs.size() / 50);
  for (std::size_t i = 0; i < xs.size(); i += stride) {
    const double F = s.baseline.cdf(xs[i]);
    if (F > 0.0 && F < 1.0 && interior(*lo, xs[i]) && interior(*hi, xs[i])) xsub.push_back(xs[i]);
  }
  return check_v_monotone(gen, s.transform, s.baseline, variant, betas, xsub, dir).pass;
}

}  // namespace

std::optional<AnalyticClaim> analytic_claim(const SystemSpec& a, const SystemSpec& b, std::span<const double> xs) {
  const bool inc = a.transform.increasing_in_param();
  const Generator& ga = a.gen;
  const Generator& gb = b.gen;
  const bool a_le_b = coordinatewise_le(a.params, b.params);
  const bool b_le_a = coordinatewise_le(b.params, a.params);

  // Coordinatewise parameter order.
  if (a.is_parallel()) {
    // X = A, Y = B with α ≤ β.
    if (a_le_b && inc && superadditive(ga, gb)) return AnalyticClaim{Relation::Dominates, Justification::ThmMain0};
    if (a_le_b && !inc && superadditive(gb, ga)) return AnalyticClaim{Relation::DominatedBy, Justification::ThmMain0};
    // X = B, Y = A with β ≤ α.
    if (b_le_a && inc && superadditive(gb, ga)) return AnalyticClaim{Relation::DominatedBy, Justification::ThmMain0};
    if (b_le_a && !inc && superadditive(ga, gb)) return AnalyticClaim{Relation::Dominates, Justification::ThmMain0};
  } else if (a.is_series()) {
    if (a_le_b && !inc && superadditive(ga, gb)) {
      return AnalyticClaim{Relation::DominatedBy, Justification::ThmMain0Min};
    }
    if (a_le_b && inc && superadditive(gb, ga)) return AnalyticClaim{Relation::Dominates, Justification::ThmMain0Min};
    if (b_le_a && !inc && superadditive(gb, ga)) return AnalyticClaim{Relation::Dominates, Justification::ThmMain0Min};
    if (b_le_a && inc && superadditive(ga, gb)) return AnalyticClaim{Relation::DominatedBy, Justification::ThmMain0Min};
  } else if (ga == gb && ga.monotone_order() >= a.k + 3) {
    if (a_le_b) {
      return AnalyticClaim{inc ? Relation::Dominates : Relation::DominatedBy, Justification::ThmKoutofnCoordinatewise};
    }
    if (b_le_a) {
      return AnalyticClaim{inc ? Relation::DominatedBy : Relation::Dominates, Justification::ThmKoutofnCoordinatewise};
    }
  }

  // Majorization plus monotonicity of the V-function.
  if (a.is_parallel()) {
    if (majorizes(a.params, b.params) && gb.monotone_order() >= 3 && superadditive(ga, gb) &&
        v_monotone(gb, a, a.params, VVariant::V, Direction::Increasing, xs)) {
      return AnalyticClaim{Relation::Dominates, Justification::ThmMain1};
    }
    if (majorizes(b.params, a.params) && ga.monotone_order() >= 3 && superadditive(gb, ga) &&
        v_monotone(ga, a, b.params, VVariant::V, Direction::Increasing, xs)) {
      return AnalyticClaim{Relation::DominatedBy, Justification::ThmMain1};
    }
  } else if (a.is_series()) {
    if (majorizes(b.params, a.params) && ga.monotone_order() >= 3 && superadditive(ga, gb) &&
        v_monotone(ga, a, b.params, VVariant::VBar, Direction::Decreasing, xs)) {
      return AnalyticClaim{Relation::DominatedBy, Justification::ThmMain1Min};
    }
    if (majorizes(a.params, b.params) && gb.monotone_order() >= 3 && superadditive(gb, ga) &&
        v_monotone(gb, a, a.params, VVariant::VBar, Direction::Decreasing, xs)) {
      return AnalyticClaim{Relation::Dominates, Justification::ThmMain1Min};
    }
  }
  return std::nullopt;
}

DominanceVerdict dominance(const SystemSpec& a, const SystemSpec& b, std::span<const double> xs) {
  a.validate();
  b.validate();
  if (a.n() != b.n() || a.k != b.k) throw UsageError("dominance needs systems with the same n and k");
  if (!(a.transform == b.transform)) throw UsageError("dominance needs systems with the same transform model");
  if (!(a.baseline == b.baseline)) throw UsageError("dominance needs systems with the same baseline");
  if (xs.empty()) throw UsageError("dominance needs a nonempty grid");

  const std::vector<double> fa = kernels::cdf_grid_parallel(a, xs, EvalMode::Safe);
  const std::vector<double> fb = kernels::cdf_grid_parallel(b, xs, EvalMode::Safe);
  DominanceVerdict v;
  std::size_t lo_i = 0;
  std::size_t hi_i = 0;
  double lo_gap = 0.0;
  double hi_gap = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double gap = fa[i] - fb[i];
    v.max_gap = std::max(v.max_gap, std::abs(gap));
    if (gap < lo_gap) {
      lo_gap = gap;
      lo_i = i;
    }
    if (gap > hi_gap) {
      hi_gap = gap;
      hi_i = i;
    }
  }
  const bool neg = lo_gap < -kDominanceTolerance;
  const bool pos = hi_gap > kDominanceTolerance;
  Relation numeric = Relation::Indistinguishable;
  if (neg && pos) {
    numeric = Relation::Crossing;
  } else if (neg) {
    numeric = Relation::Dominates;
  } else if (pos) {
    numeric = Relation::DominatedBy;
  }
  if (neg) v.witnesses.push_back({xs[lo_i], fa[lo_i], fb[lo_i]});
  if (pos) v.witnesses.push_back({xs[hi_i], fa[hi_i], fb[hi_i]});

  const std::optional<AnalyticClaim> claim = analytic_claim(a, b, xs);
  const bool agrees = claim && ((claim->relation == Relation::Dominates && !pos) ||
                                (claim->relation == Relation::DominatedBy && !neg));
  if (agrees) {
    v.relation = numeric == Relation::Indistinguishable ? Relation::Indistinguishable : claim->relation;
    v.justification = claim->justification;
  } else {
    v.relation = numeric;
    v.justification = Justification::NumericOnly;
  }
  return v;
}

DominanceVerdict dominance(const SystemSpec& a, const SystemSpec& b) {
  const std::vector<SystemSpec> both{a, b};
  return dominance(a, b, quantile_grid(both, kDefaultGridPoints));
}

nlohmann::json to_json(const DominanceVerdict& v) {
  nlohmann::json w = nlohmann::json::array();
  for (const Witness& x : v.witnesses) w.push_back({{"x", x.x}, {"f1", x.f1}, {"f2", x.f2}});
  return {{"relation", relation_name(v.relation)},
          {"justification", justification_name(v.justification)},
          {"max_gap", v.max_gap},
          {"witnesses", w}};
}

}  // namespace copord
