#include <algorithm>
#include <cmath>
#include <string>

#include "copula_order/ordering.hpp"

namespace copord {

std::vector<double> default_superadditivity_grid() {
  std::vector<double> g;
  for (int j = 1; j <= 200; ++j) g.push_back(20.0 * j / 200.0);
  return g;
}

SuperadditivityReport check_superadditive(const Generator& psi1, const Generator& phi2, std::span<const double> grid) {
  SuperadditivityReport rep;
  if (psi1 == phi2) {
    rep.pairs = grid.size() * (grid.size() + 1) / 2;
    return rep;
  }
  const auto g = [&](double t) { return phi2.phi(psi1.psi(t)); };
  std::vector<double> gx(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0)) throw RangeError("super-additivity grid points must be >= 0");
    gx[i] = g(grid[i]);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      ++rep.pairs;
      const double whole = g(grid[i] + grid[j]);
      if (std::isinf(whole)) continue;
      const double gap = whole - gx[i] - gx[j];
      const double tol = -1e-9 * (1.0 + std::abs(whole));
      if (gap < rep.worst_gap) {
        rep.worst_gap = gap;
        rep.at_x = grid[i];
        rep.at_y = grid[j];
      }
      if (gap < tol) rep.pass = false;
    }
  }
  return rep;
}

SuperadditivityReport check_superadditive(const Generator& psi1, const Generator& phi2) {
  return check_superadditive(psi1, phi2, default_superadditivity_grid());
}

nlohmann::json to_json(const SuperadditivityReport& r) {
  nlohmann::json j{{"pass", r.pass}, {"label", r.label}, {"pairs", r.pairs}, {"worst_gap", r.worst_gap}};
  if (r.pass) {
    j["counterexample"] = nullptr;
  } else {
    j["counterexample"] = {{"x", r.at_x}, {"y", r.at_y}, {"gap", r.worst_gap}};
  }
  return j;
}

double v_function(const Generator& gen, const Transform& t, const Baseline& b, double beta, double x,
                   VVariant variant) {
  const double F = b.cdf(x);
  if (!(F > 0.0 && F < 1.0)) throw DomainError("V-function needs an interior point with F(x) in (0,1)");
  const ComponentValue c = transform_component(t, b, beta, x);
  const double dT = transform_cdf_dparam(t, b, beta, x, EvalMode::Raw);
  switch (variant) {
    case VVariant::V: return dT / gen.psi_prime_of_phi(c.cdf);
    case VVariant::VStar: return -gen.kappa(gen.phi(c.cdf)) * dT / c.cdf;
    case VVariant::VBar: return -dT / gen.psi_prime_of_phi(c.survival);
    case VVariant::VBarStar: return gen.kappa(gen.phi(c.survival)) * dT / c.survival;
  }
  return 0.0;
}

namespace {

// Scans consecutive values for steps against `expected`.
template <class Eval>
void scan_monotone(MonotoneReport& rep, std::span<const double> args, Direction expected, double tolerance,
                   double x, Eval&& eval) {
  double prev = 0.0;
  for (std::size_t i = 0; i < args.size(); ++i) {
    double v = 0.0;
    try {
      v = eval(args[i]);
    } catch (const DomainError&) {
      rep.pass = false;
      rep.worst_violation = kInfinity;
      rep.at = args[i];
      rep.at_x = x;
      return;
    }
    ++rep.checked;
    if (i > 0) {
      const double step = expected == Direction::Increasing ? prev - v : v - prev;
      if (step > 0.0) {
        const double rel = step / std::max({std::abs(prev), std::abs(v), 1e-300});
        if (rel > rep.worst_violation) {
          rep.worst_violation = rel;
          rep.at = args[i];
          rep.at_x = x;
        }
        if (rel > tolerance) rep.pass = false;
      }
    }
    prev = v;
  }
}

}  // namespace

MonotoneReport check_v_monotone(const Generator& gen, const Transform& t, const Baseline& b, VVariant variant,
                                std::span<const double> betas, std::span<const double> xs, Direction expected,
                                double tolerance) {
  MonotoneReport rep;
  for (double x : xs) {
    scan_monotone(rep, betas, expected, tolerance, x,
                  [&](double beta) { return v_function(gen, t, b, beta, x, variant); });
  }
  return rep;
}

double aux_function(const Generator& gen, AuxFunction f, double u) {
  if (!(u > 0.0 && u < 1.0)) throw RangeError("auxiliary function argument must lie in (0,1)");
  switch (f) {
    case AuxFunction::Se: return (1.0 - u) / gen.psi_prime_of_phi(u);
    case AuxFunction::SeBar: return (1.0 - u) / gen.psi_prime_of_phi(1.0 - u);
    case AuxFunction::Sc: return u / gen.psi_prime_of_phi(u);
    case AuxFunction::SoBar: return u * u / gen.psi_prime_of_phi(u);
  }
  return 0.0;
}

MonotoneReport check_aux_monotone(const Generator& gen, AuxFunction f, std::span<const double> us,
                                  Direction expected, double tolerance) {
  MonotoneReport rep;
  scan_monotone(rep, us, expected, tolerance, 0.0, [&](double u) { return aux_function(gen, f, u); });
  return rep;
}

}  // namespace copord
