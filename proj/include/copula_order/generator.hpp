#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "copula_order/numeric.hpp"

namespace copord {

enum class Family { Independence, Clayton, Frank, Gumbel, AMH };

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/// An Archimedean generator ψ together with its inverse φ = ψ⁻¹.
///
/// Parameter ranges follow the usual tables: Clayton γ ≥ −1, γ ≠ 0; Frank
/// γ ≠ 0; Gumbel γ ≥ 1; AMH γ ∈ (−1, 1). φ(0) of a strict generator is
/// `kInfinity`, and ψ(kInfinity) = 0 exactly.
class Generator {
 public:
  Generator() = default;  // independence
  Generator(Family family, double gamma);

  static Generator independence() { return {}; }
  static Generator clayton(double gamma) { return {Family::Clayton, gamma}; }
  static Generator frank(double gamma) { return {Family::Frank, gamma}; }
  static Generator gumbel(double gamma) { return {Family::Gumbel, gamma}; }
  static Generator amh(double gamma) { return {Family::AMH, gamma}; }

  /// Parses "independence", "clayton:1.5", "gumbel:2", ...
  static Generator parse(std::string_view text);

  Family family() const { return family_; }
  double gamma() const { return gamma_; }

  /// φ(0) = +∞. Only Clayton with γ < 0 is non-strict.
  bool is_strict() const { return !(family_ == Family::Clayton && gamma_ < 0.0); }

  /// Largest d for which ψ is d-monotone on (0, ∞); `kCompletelyMonotone`
  /// when ψ is completely monotone. Negative-dependence Frank/AMH are only
  /// certified for d = 2.
  int monotone_order() const;
  static constexpr int kCompletelyMonotone = 1 << 30;

  double psi(double t) const;
  double phi(double u) const;
  double psi_prime(double t) const;
  /// ψ′(φ(u)) in closed form.
  double psi_prime_of_phi(double u) const;
  /// φ′(u) = 1 / ψ′(φ(u)).
  double phi_prime(double u) const { return 1.0 / psi_prime_of_phi(u); }
  /// K(t) = −ψ(t)/ψ′(t).
  double kappa(double t) const;

  std::string to_string() const;

  friend bool operator==(const Generator&, const Generator&) = default;

 private:
  Family family_ = Family::Independence;
  double gamma_ = 0.0;
};

/// C_ψ(u_1, ..., u_n) = ψ(φ(u_1) + ... + φ(u_n)).
double copula_value(const Generator& gen, std::span<const double> u);

struct MonotoneSignViolation {
  int order = 0;
  double t = 0.0;
  double derivative = 0.0;
};

struct DMonotoneReport {
  int d = 0;
  std::size_t points_checked = 0;
  std::vector<MonotoneSignViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Numerically spot-checks (−1)^i ψ^{(i)}(t) ≥ 0 for i = 0..d−2 on `grid`.
DMonotoneReport check_d_monotone(const Generator& gen, int d, std::span<const double> grid);

}  // namespace copord
