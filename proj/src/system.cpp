#include "copula_order/system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "copula_order/forward_difference.hpp"

namespace copord {

void SystemSpec::validate() const {
  if (params.empty()) throw RangeError("system needs at least one component parameter");
  if (n() > kMaxSubsetItems) {
    throw ResourceError("system size limited to " + std::to_string(kMaxSubsetItems) + " components, got " +
                        std::to_string(n()));
  }
  if (k < 0 || k > n() - 1) {
    throw RangeError("system k must lie in [0, n-1] = [0, " + std::to_string(n() - 1) + "], got " +
                     std::to_string(k));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!(params[i] > 0.0) || !std::isfinite(params[i])) {
      throw RangeError("component parameter params[" + std::to_string(i) + "] must be positive, got " +
                       std::to_string(params[i]));
    }
  }
  transform.validate();
}

namespace {

double clamp_prob(double u) { return std::clamp(u, kClampLow, kClampHigh); }

double clamp_interior(double u, EvalMode mode) {
  if (mode == EvalMode::Raw || u == 0.0 || u == 1.0) return u;
  return clamp_prob(u);
}

// ψ(Σ φ(v_i)) over the values of v with the exact limits at 0 and 1.
double copula_of(const Generator& gen, const std::vector<double>& v, EvalMode mode) {
  for (double x : v) {
    if (x == 0.0) return 0.0;
  }
  if (gen.family() == Family::Independence) {
    double p = 1.0;
    for (double x : v) p *= clamp_interior(x, mode);
    return p;
  }
  CompensatedSum s;
  for (double x : v) {
    if (x == 1.0) continue;
    const double t = gen.phi(clamp_interior(x, mode));
    if (std::isinf(t)) return 0.0;
    s.add(t);
  }
  return gen.psi(s.value());
}

// Σ_j coef_j S_j with S_j = Σ_{|I|=j} f(Σ_I t), j ≥ need, coef_j =
// (−1)^{j−need} C(j−1, need−1). When `member` >= 0 only subsets containing it count.
template <class F>
double inclusion_exclusion(const std::vector<double>& t, int need, int member, F&& f) {
  const int r = static_cast<int>(t.size());
  std::vector<CompensatedSum> by_size(static_cast<std::size_t>(r + 1));
  for_each_subset_sum(t, [&](std::uint32_t mask, int size, double sum) {
    if (size < need) return;
    if (member >= 0 && (mask & (std::uint32_t{1} << member)) == 0) return;
    by_size[static_cast<std::size_t>(size)].add(f(sum));
  });
  std::vector<double> terms;
  for (int j = need; j <= r; ++j) {
    const double c = static_cast<double>(binomial(j - 1, need - 1)) * (((j - need) % 2 == 0) ? 1.0 : -1.0);
    terms.push_back(c * by_size[static_cast<std::size_t>(j)].value());
  }
  std::sort(terms.begin(), terms.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  CompensatedSum total;
  for (double v : terms) total.add(v);
  return total.value();
}

std::vector<ComponentValue> components(const SystemSpec& spec, double x) {
  spec.validate();
  std::vector<ComponentValue> c;
  c.reserve(spec.params.size());
  for (double a : spec.params) c.push_back(transform_component(spec.transform, spec.baseline, a, x));
  return c;
}

}  // namespace

EvalPoint eval_point(const SystemSpec& spec, double x, EvalMode mode) {
  EvalPoint p;
  p.x = x;
  for (const ComponentValue& c : components(spec, x)) {
    const double u = mode == EvalMode::Safe ? clamp_prob(c.cdf) : c.cdf;
    const double s = mode == EvalMode::Safe ? clamp_prob(c.survival) : c.survival;
    p.u.push_back(u);
    p.survival.push_back(s);
    p.t.push_back(spec.gen.phi(u));
  }
  return p;
}

double parallel_cdf(const SystemSpec& spec, double x, EvalMode mode) {
  std::vector<double> u;
  for (const ComponentValue& c : components(spec, x)) u.push_back(c.cdf);
  return copula_of(spec.gen, u, mode);
}

double series_survival(const SystemSpec& spec, double x, EvalMode mode) {
  std::vector<double> s;
  for (const ComponentValue& c : components(spec, x)) s.push_back(c.survival);
  return copula_of(spec.gen, s, mode);
}

double koutofn_cdf_inclusion_exclusion(const SystemSpec& spec, double x, EvalMode mode) {
  const std::vector<ComponentValue> comp = components(spec, x);
  int failed = 0;
  std::vector<double> t;
  for (const ComponentValue& c : comp) {
    if (c.cdf == 1.0 || c.survival == 0.0) {
      ++failed;
    } else if (c.cdf > 0.0) {
      t.push_back(spec.gen.phi(clamp_interior(c.cdf, mode)));
    }
  }
  const int need = spec.n() - spec.k - failed;
  if (need <= 0) return 1.0;
  if (need > static_cast<int>(t.size())) return 0.0;
  const Generator& gen = spec.gen;
  const double v = inclusion_exclusion(t, need, -1, [&gen](double s) { return gen.psi(s); });
  return std::clamp(v, 0.0, 1.0);
}

double koutofn_cdf(const SystemSpec& spec, double x, EvalMode mode) {
  spec.validate();
  if (spec.is_parallel()) return parallel_cdf(spec, x, mode);
  if (spec.is_series()) return 1.0 - series_survival(spec, x, mode);
  return koutofn_cdf_inclusion_exclusion(spec, x, mode);
}

double system_quantile(const SystemSpec& spec, double p) {
  spec.validate();
  if (!(p > 0.0 && p < 1.0)) throw RangeError("system quantile level must lie in (0,1), got " + std::to_string(p));
  double lo = kInfinity;
  double hi = -kInfinity;
  for (double a : spec.params) {
    const double q = transform_quantile(spec.transform, spec.baseline, a, p);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  double step = std::max(1.0, hi - lo);
  for (int i = 0; i < 200 && koutofn_cdf(spec, lo) >= p; ++i, step *= 2.0) lo -= step;
  step = std::max(1.0, hi - lo);
  for (int i = 0; i < 200 && koutofn_cdf(spec, hi) < p; ++i, step *= 2.0) hi += step;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (koutofn_cdf(spec, mid) >= p) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

namespace {

struct DerivativeSetup {
  EvalPoint point;
  double dT = 0.0;
};

DerivativeSetup derivative_setup(const SystemSpec& spec, double x, int ell, EvalMode mode) {
  spec.validate();
  if (ell < 0 || ell >= spec.n()) throw RangeError("component index " + std::to_string(ell) + " out of range");
  DerivativeSetup d{eval_point(spec, x, mode), 0.0};
  const double u = d.point.u[static_cast<std::size_t>(ell)];
  if (mode == EvalMode::Raw && (u == 0.0 || u == 1.0)) {
    throw DomainError("derivative undefined where component " + std::to_string(ell) + " has u in {0,1}");
  }
  d.dT = transform_cdf_dparam(spec.transform, spec.baseline, spec.params[static_cast<std::size_t>(ell)], x, mode);
  return d;
}

}  // namespace

double koutofn_cdf_dparam(const SystemSpec& spec, double x, int ell, EvalMode mode) {
  const DerivativeSetup d = derivative_setup(spec, x, ell, mode);
  const Generator& gen = spec.gen;
  const auto l = static_cast<std::size_t>(ell);
  if (d.dT == 0.0) return 0.0;
  if (spec.is_parallel()) {
    CompensatedSum s;
    for (double t : d.point.t) s.add(t);
    return gen.psi_prime(s.value()) / gen.psi_prime_of_phi(d.point.u[l]) * d.dT;
  }
  if (spec.is_series()) {
    CompensatedSum s;
    for (double v : d.point.survival) s.add(gen.phi(v));
    return gen.psi_prime(s.value()) / gen.psi_prime_of_phi(d.point.survival[l]) * d.dT;
  }
  const double sum = inclusion_exclusion(d.point.t, spec.n() - spec.k, ell,
                                         [&gen](double s) { return gen.psi_prime(s); });
  return sum / gen.psi_prime_of_phi(d.point.u[l]) * d.dT;
}

double koutofn_cdf_dparam_difference_form(const SystemSpec& spec, double x, int ell, EvalMode mode) {
  const DerivativeSetup d = derivative_setup(spec, x, ell, mode);
  const Generator& gen = spec.gen;
  const int n = spec.n();
  const auto l = static_cast<std::size_t>(ell);
  // The series form couples survivals, so its difference form is the k = 0
  // one over φ(1 − u_i); the sign flip of ∂(1 − u)/∂α cancels the 1 − S.
  const bool series = spec.is_series() && !spec.is_parallel();
  const int k = series ? 0 : spec.k;
  std::vector<double> tv = d.point.t;
  double pivot = d.point.u[l];
  if (series) {
    for (std::size_t i = 0; i < tv.size(); ++i) tv[i] = gen.phi(d.point.survival[i]);
    pivot = d.point.survival[l];
  }
  std::vector<double> others;
  for (int i = 0; i < n; ++i) {
    if (i != ell) others.push_back(tv[static_cast<std::size_t>(i)]);
  }
  for (double t : others) {
    if (!std::isfinite(t)) throw DomainError("difference form needs finite phi values");
  }
  const double work = static_cast<double>(binomial(n - 1, k)) * std::ldexp(1.0, k);
  if (work > 4294967296.0) throw ResourceError("difference-form derivative too large to enumerate");
  const std::function<double(double)> dpsi = [&gen](double s) { return gen.psi_prime(s); };
  const double tl = tv[l];
  CompensatedSum total;
  const std::uint32_t count = std::uint32_t{1} << (n - 1);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    if (std::popcount(mask) != n - k - 1) continue;
    FDStencil st;
    CompensatedSum base;
    base.add(tl);
    for (int i = 0; i < n - 1; ++i) {
      const double v = others[static_cast<std::size_t>(i)];
      if (mask & (std::uint32_t{1} << i)) {
        base.add(v);
      } else {
        st.increments.push_back(v);
      }
    }
    st.base = base.value();
    total.add(st.increments.empty() ? dpsi(st.base) : forward_difference(dpsi, st));
  }
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  return sign * total.value() / gen.psi_prime_of_phi(pivot) * d.dT;
}

}  // namespace copord
