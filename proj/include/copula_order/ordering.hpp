#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "copula_order/system.hpp"

namespace copord {

// ---- majorization ----

/// a ⪰ b: equal totals and every partial sum of the k smallest entries of a
/// is at most that of b. Compared with tolerance 1e-12 times the scale.
bool majorizes(std::span<const double> a, std::span<const double> b);

/// Parameter vectors with entries in [a, b] summing to c.
struct BoxConstraint {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  int n = 0;
  void validate() const;
};

/// Extreme members of a box: alpha_star majorizes, alpha_bar is majorized by,
/// every vector of the box.
struct ExtremalConfig {
  int q = 0;
  double eta = 0.0;
  std::vector<double> alpha_star;
  std::vector<double> alpha_bar;
};

ExtremalConfig extremal_config(const BoxConstraint& box);
nlohmann::json to_json(const ExtremalConfig& e);

// ---- super-additivity of φ₂∘ψ₁ ----

struct SuperadditivityReport {
  bool pass = true;
  /// Always "grid-verified": a pass only covers the pairs that were checked.
  std::string label = "grid-verified";
  std::size_t pairs = 0;
  double worst_gap = 0.0;
  double at_x = 0.0;
  double at_y = 0.0;
};

/// Default grid: 200 points spread evenly over (0, 20].
std::vector<double> default_superadditivity_grid();

/// Checks g(x+y) >= g(x) + g(y) for g = φ₂∘ψ₁ over all grid pairs.
SuperadditivityReport check_superadditive(const Generator& psi1, const Generator& phi2,
                                          std::span<const double> grid);
SuperadditivityReport check_superadditive(const Generator& psi1, const Generator& phi2);
nlohmann::json to_json(const SuperadditivityReport& r);

// ---- V-functions and auxiliary S-functions ----

enum class VVariant { V, VStar, VBar, VBarStar };

/// V = ∂T/∂β / ψ′(φ(T)), V* = −K(φ(T)) ∂T/∂β / T, and the barred forms with
/// the survival transform 1 − T in place of T.
double v_function(const Generator& gen, const Transform& t, const Baseline& b, double beta, double x,
                  VVariant variant);

enum class Direction { Increasing, Decreasing };

struct MonotoneReport {
  bool pass = true;
  std::size_t checked = 0;
  /// Largest relative step against the expected direction.
  double worst_violation = 0.0;
  double at = 0.0;
  double at_x = 0.0;
};

/// Monotonicity of β ↦ V(β, x) over `betas` for every x in `xs`.
MonotoneReport check_v_monotone(const Generator& gen, const Transform& t, const Baseline& b, VVariant variant,
                                std::span<const double> betas, std::span<const double> xs, Direction expected,
                                double tolerance = 1e-12);

enum class AuxFunction {
  Se,     // (1 − u) / ψ′(φ(u))
  SeBar,  // (1 − u) / ψ′(φ(1 − u))
  Sc,     // u / ψ′(φ(u))
  SoBar,  // u² / ψ′(φ(u))
};

double aux_function(const Generator& gen, AuxFunction f, double u);
MonotoneReport check_aux_monotone(const Generator& gen, AuxFunction f, std::span<const double> us,
                                  Direction expected, double tolerance = 1e-12);

// ---- Schur scans ----

enum class SignClass { NonNegative, NonPositive, Zero, SignChanging };

std::string_view sign_class_name(SignClass c);
SignClass classify_signs(std::span<const double> values, double tolerance = 1e-12);

struct SchurCurve {
  std::vector<double> x;
  std::vector<double> d;
  SignClass sign = SignClass::Zero;
};

/// D(x) = (α_ℓ − α_m)(∂F/∂α_ℓ − ∂F/∂α_m) over xs.
SchurCurve schur_scan(const SystemSpec& spec, std::span<const double> xs, int ell, int m,
                      EvalMode mode = EvalMode::Safe);

// ---- stochastic dominance ----

enum class Relation { Dominates, DominatedBy, Crossing, Indistinguishable };
enum class Justification { ThmMain0, ThmMain1, ThmMain0Min, ThmMain1Min, ThmKoutofnCoordinatewise, NumericOnly };

std::string_view relation_name(Relation r);
std::string_view justification_name(Justification j);

inline constexpr double kDominanceTolerance = 1e-9;

struct Witness {
  double x = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
};

/// `Dominates` means the first system is stochastically larger (its CDF lies
/// below the second everywhere on the grid).
struct DominanceVerdict {
  Relation relation = Relation::Indistinguishable;
  Justification justification = Justification::NumericOnly;
  double max_gap = 0.0;
  std::vector<Witness> witnesses;
};

DominanceVerdict dominance(const SystemSpec& a, const SystemSpec& b, std::span<const double> xs);
DominanceVerdict dominance(const SystemSpec& a, const SystemSpec& b);
nlohmann::json to_json(const DominanceVerdict& v);

/// Sufficient condition that fires for the pair, if any; the relation is
/// from the first system's point of view.
struct AnalyticClaim {
  Relation relation;
  Justification justification;
};
std::optional<AnalyticClaim> analytic_claim(const SystemSpec& a, const SystemSpec& b, std::span<const double> xs);

}  // namespace copord
