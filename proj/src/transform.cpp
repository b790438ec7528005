#include "copula_order/transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "copula_order/errors.hpp"
#include "copula_order/numeric.hpp"

namespace copord {

EvalMode eval_mode_from_env() {
  const char* v = std::getenv("COPULA_ORDER_SAFE_MODE");
  if (v == nullptr || *v == '\0') return EvalMode::Safe;
  const std::string s(v);
  if (s == "1") return EvalMode::Safe;
  if (s == "0") return EvalMode::Raw;
  throw UsageError("COPULA_ORDER_SAFE_MODE must be 0 or 1, got '" + s + "'");
}

std::string_view model_name(Model m) {
  switch (m) {
    case Model::PHR: return "PHR";
    case Model::PRHR: return "PRHR";
    case Model::OMO: return "OMO";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  for (Model m : {Model::PHR, Model::PRHR, Model::OMO}) {
    if (name == model_name(m)) return m;
  }
  throw UsageError("unknown transform model '" + std::string(name) + "' (expected PHR, PRHR or OMO)");
}

void Transform::validate() const {
  if (model == Model::OMO && !(theta > 0.0 && std::isfinite(theta))) {
    throw RangeError("transform parameter theta must be positive, got " + std::to_string(theta));
  }
}

std::string_view baseline_name(BaselineFamily f) {
  switch (f) {
    case BaselineFamily::StdExponential: return "std_exponential";
    case BaselineFamily::Exponential: return "exponential";
    case BaselineFamily::Weibull: return "weibull";
    case BaselineFamily::Uniform01: return "uniform01";
    case BaselineFamily::Tabulated: return "tabulated";
  }
  return "?";
}

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw RangeError(std::string("baseline parameter ") + name + " must be positive, got " + std::to_string(v));
  }
}

void require_x(double x) {
  if (std::isnan(x)) throw RangeError("evaluation point x is NaN");
}

}  // namespace

Baseline Baseline::exponential(double rate) {
  require_positive(rate, "rate");
  Baseline b;
  b.family_ = BaselineFamily::Exponential;
  b.rate_ = rate;
  return b;
}

Baseline Baseline::weibull(double shape, double scale) {
  require_positive(shape, "shape");
  require_positive(scale, "scale");
  Baseline b;
  b.family_ = BaselineFamily::Weibull;
  b.shape_ = shape;
  b.scale_ = scale;
  return b;
}

Baseline Baseline::uniform01() {
  Baseline b;
  b.family_ = BaselineFamily::Uniform01;
  return b;
}

Baseline Baseline::tabulated(std::vector<double> xs, std::vector<double> Fs) {
  if (xs.size() != Fs.size() || xs.size() < 2) {
    throw RangeError("tabulated baseline needs at least two (x,F) rows of equal length");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !(Fs[i] >= 0.0 && Fs[i] <= 1.0)) {
      throw RangeError("tabulated baseline row " + std::to_string(i) + " is out of range");
    }
    if (i > 0 && !(xs[i] > xs[i - 1])) throw RangeError("tabulated baseline x must be strictly increasing");
    if (i > 0 && Fs[i] < Fs[i - 1]) throw RangeError("tabulated baseline F must be nondecreasing");
  }
  Baseline b;
  b.family_ = BaselineFamily::Tabulated;
  b.xs_ = std::move(xs);
  b.Fs_ = std::move(Fs);
  return b;
}

double Baseline::cdf(double x) const {
  require_x(x);
  switch (family_) {
    case BaselineFamily::StdExponential:
    case BaselineFamily::Exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x);
    case BaselineFamily::Weibull:
      return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / scale_, shape_));
    case BaselineFamily::Uniform01:
      return std::clamp(x, 0.0, 1.0);
    case BaselineFamily::Tabulated: {
      if (x < xs_.front()) return 0.0;
      if (x >= xs_.back()) return 1.0;
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
      const double w = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
      return Fs_[i - 1] + w * (Fs_[i] - Fs_[i - 1]);
    }
  }
  return 0.0;
}

double Baseline::sf(double x) const {
  switch (family_) {
    case BaselineFamily::StdExponential:
    case BaselineFamily::Exponential:
    case BaselineFamily::Weibull:
      return std::exp(log_sf(x));
    default:
      return 1.0 - cdf(x);
  }
}

double Baseline::log_cdf(double x) const {
  require_x(x);
  switch (family_) {
    case BaselineFamily::StdExponential:
    case BaselineFamily::Exponential:
      return x <= 0.0 ? -kInfinity : log1mexp(rate_ * x);
    case BaselineFamily::Weibull:
      return x <= 0.0 ? -kInfinity : log1mexp(std::pow(x / scale_, shape_));
    default:
      return std::log(cdf(x));
  }
}

double Baseline::log_sf(double x) const {
  require_x(x);
  switch (family_) {
    case BaselineFamily::StdExponential:
    case BaselineFamily::Exponential:
      return x <= 0.0 ? 0.0 : -rate_ * x;
    case BaselineFamily::Weibull:
      return x <= 0.0 ? 0.0 : -std::pow(x / scale_, shape_);
    default:
      return std::log1p(-cdf(x));
  }
}

double Baseline::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw RangeError("quantile probability must lie in (0,1), got " + std::to_string(p));
  switch (family_) {
    case BaselineFamily::StdExponential:
    case BaselineFamily::Exponential:
    case BaselineFamily::Weibull:
      return quantile_from_log_sf(std::log1p(-p));
    case BaselineFamily::Uniform01:
      return p;
    case BaselineFamily::Tabulated: {
      double lo = xs_.front();
      double hi = xs_.back();
      if (cdf(lo) >= p) return lo;
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) >= p) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      return hi;
    }
  }
  return 0.0;
}

double Baseline::quantile_from_log_sf(double log_s) const {
  if (!(log_s <= 0.0)) throw RangeError("quantile log-survival must not be positive");
  switch (family_) {
    case BaselineFamily::StdExponential:
    case BaselineFamily::Exponential:
      return -log_s / rate_;
    case BaselineFamily::Weibull:
      return scale_ * std::pow(-log_s, 1.0 / shape_);
    default: {
      // Levels that round to 0 or 1 map to the ends of the bounded support.
      const double p = -std::expm1(log_s);
      const bool tab = family_ == BaselineFamily::Tabulated;
      if (p <= 0.0) return tab ? xs_.front() : 0.0;
      if (p >= 1.0) return tab ? xs_.back() : 1.0;
      return quantile(p);
    }
  }
}

namespace {

void require_param(double param) {
  if (!(param > 0.0) || !std::isfinite(param)) {
    throw RangeError("component parameter must be positive and finite, got " + std::to_string(param));
  }
}

double logistic(double z) { return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z)); }

}  // namespace

ComponentValue transform_component(const Transform& t, const Baseline& b, double param, double x) {
  require_param(param);
  t.validate();
  switch (t.model) {
    case Model::PHR: {
      const double ls = b.log_sf(x);
      if (ls == 0.0) return {0.0, 1.0};
      return {-std::expm1(param * ls), std::exp(param * ls)};
    }
    case Model::PRHR: {
      const double lf = b.log_cdf(x);
      if (lf == 0.0) return {1.0, 0.0};
      return {std::exp(param * lf), -std::expm1(param * lf)};
    }
    case Model::OMO: {
      const double lf = b.log_cdf(x);
      const double ls = b.log_sf(x);
      if (std::isinf(lf)) return {0.0, 1.0};
      if (std::isinf(ls)) return {1.0, 0.0};
      const double z = std::log(param) + t.theta * (lf - ls);
      return {logistic(z), logistic(-z)};
    }
  }
  return {};
}

double transform_cdf(const Transform& t, const Baseline& b, double param, double x) {
  return transform_component(t, b, param, x).cdf;
}

double survival_transform(const Transform& t, const Baseline& b, double param, double x) {
  return transform_component(t, b, param, x).survival;
}

double transform_cdf_dparam(const Transform& t, const Baseline& b, double param, double x, EvalMode mode) {
  require_param(param);
  t.validate();
  switch (t.model) {
    case Model::PHR: {
      const double ls = b.log_sf(x);
      if (ls == 0.0 || std::isinf(ls)) return 0.0;
      return -std::exp(param * ls) * ls;
    }
    case Model::PRHR: {
      const double lf = b.log_cdf(x);
      if (lf == 0.0 || std::isinf(lf)) return 0.0;
      return std::exp(param * lf) * lf;
    }
    case Model::OMO: {
      double lf = b.log_cdf(x);
      double ls = b.log_sf(x);
      if (std::isinf(lf) || std::isinf(ls)) {
        if (mode == EvalMode::Raw) throw DomainError("OMO derivative undefined where F(x) is 0 or 1");
        const double F = std::isinf(lf) ? kClampLow : kClampHigh;
        lf = std::log(F);
        ls = std::log1p(-F);
      }
      const double z = std::log(param) + t.theta * (lf - ls);
      return logistic(z) * logistic(-z) / param;
    }
  }
  return 0.0;
}

double transform_quantile(const Transform& t, const Baseline& b, double param, double u) {
  require_param(param);
  t.validate();
  if (!(u > 0.0 && u < 1.0)) throw RangeError("transform quantile level must lie in (0,1), got " + std::to_string(u));
  switch (t.model) {
    case Model::PHR:
      return b.quantile_from_log_sf(std::log1p(-u) / param);
    case Model::PRHR:
      return b.quantile_from_log_sf(log1mexp(-std::log(u) / param));
    case Model::OMO: {
      const double lr = (std::log(u) - std::log1p(-u) - std::log(param)) / t.theta;
      return b.quantile_from_log_sf(-softplus(lr));
    }
  }
  return 0.0;
}

}  // namespace copord
