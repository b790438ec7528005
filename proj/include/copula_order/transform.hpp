#pragma once

#include <string_view>
#include <vector>

#include "copula_order/errors.hpp"

namespace copord {

/// How boundary inputs are treated. Safe mode clamps probabilities into
/// [kClampLow, kClampHigh] where a formula would otherwise be singular;
/// raw mode raises DomainError instead.
enum class EvalMode { Safe, Raw };

inline constexpr double kClampLow = 1e-12;
inline constexpr double kClampHigh = 1.0 - 1e-12;

/// Reads COPULA_ORDER_SAFE_MODE (0 or 1, default 1).
EvalMode eval_mode_from_env();

enum class Model { PHR, PRHR, OMO };

std::string_view model_name(Model m);
Model parse_model(std::string_view name);

/// A transformation model T(β, F). `theta` is only used by OMO.
struct Transform {
  Model model = Model::PHR;
  double theta = 1.0;

  static Transform phr() { return {Model::PHR, 1.0}; }
  static Transform prhr() { return {Model::PRHR, 1.0}; }
  static Transform omo(double theta = 1.0) { return {Model::OMO, theta}; }

  void validate() const;
  /// True when T(β, F) increases in β (PHR, OMO).
  bool increasing_in_param() const { return model != Model::PRHR; }

  friend bool operator==(const Transform&, const Transform&) = default;
};

enum class BaselineFamily { StdExponential, Exponential, Weibull, Uniform01, Tabulated };

std::string_view baseline_name(BaselineFamily f);

/// Baseline lifetime distribution F. Log-scale accessors avoid cancellation
/// in the tails.
class Baseline {
 public:
  Baseline() = default;  // standard exponential

  static Baseline std_exponential() { return {}; }
  static Baseline exponential(double rate);
  static Baseline weibull(double shape, double scale);
  static Baseline uniform01();
  /// Piecewise-linear CDF through (xs[i], Fs[i]); 0 below xs.front(), 1 above xs.back().
  static Baseline tabulated(std::vector<double> xs, std::vector<double> Fs);

  BaselineFamily family() const { return family_; }
  double rate() const { return rate_; }
  double shape() const { return shape_; }
  double scale() const { return scale_; }
  const std::vector<double>& table_x() const { return xs_; }
  const std::vector<double>& table_F() const { return Fs_; }

  double cdf(double x) const;
  double sf(double x) const;
  double log_cdf(double x) const;
  double log_sf(double x) const;
  /// Smallest x with F(x) >= p, p ∈ (0, 1).
  double quantile(double p) const;
  /// Quantile addressed through log S = log(1 − p) ≤ 0; accurate for small p.
  /// On bounded support, levels that round to 0 or 1 give the support ends.
  double quantile_from_log_sf(double log_s) const;

  friend bool operator==(const Baseline&, const Baseline&) = default;

 private:
  BaselineFamily family_ = BaselineFamily::StdExponential;
  double rate_ = 1.0;
  double shape_ = 1.0;
  double scale_ = 1.0;
  std::vector<double> xs_;
  std::vector<double> Fs_;
};

/// Transformed component distribution T(β, F)(x) and its pieces.
struct ComponentValue {
  double cdf = 0.0;
  double survival = 1.0;
};

ComponentValue transform_component(const Transform& t, const Baseline& b, double param, double x);
double transform_cdf(const Transform& t, const Baseline& b, double param, double x);
double survival_transform(const Transform& t, const Baseline& b, double param, double x);
/// ∂T(β, F(x))/∂β.
double transform_cdf_dparam(const Transform& t, const Baseline& b, double param, double x,
                            EvalMode mode = EvalMode::Safe);
/// x with T(β, F)(x) = u, u ∈ (0, 1).
double transform_quantile(const Transform& t, const Baseline& b, double param, double u);

}  // namespace copord
