#include "copula_order/generator.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace copord {

namespace {

void require_t(double t) {
  if (!(t >= 0.0)) throw RangeError("generator argument t must be >= 0, got " + std::to_string(t));
}

void require_u(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw RangeError("copula argument u must lie in [0,1], got " + std::to_string(u));
}

// 1 - e^{-t}(1 - e^{-g}) for g > 0, without cancellation at either end.
double frank_pos_arg(double t, double g) {
  const double a = -std::expm1(-t) + std::exp(-t - g);
  if (a > 0.5) return 1.0 + std::exp(-t) * std::expm1(-g);
  return a;
}

// log of frank_pos_arg; log1p keeps the tail accurate when the argument is near 1.
double frank_pos_log_arg(double t, double g) {
  const double a = -std::expm1(-t) + std::exp(-t - g);
  if (a > 0.5) return std::log1p(std::exp(-t) * std::expm1(-g));
  return std::log(a);
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Independence: return "independence";
    case Family::Clayton: return "clayton";
    case Family::Frank: return "frank";
    case Family::Gumbel: return "gumbel";
    case Family::AMH: return "amh";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  for (Family f : {Family::Independence, Family::Clayton, Family::Frank, Family::Gumbel, Family::AMH}) {
    if (name == family_name(f)) return f;
  }
  if (name == "ali-mikhail-haq") return Family::AMH;
  throw UsageError("unknown generator family '" + std::string(name) + "'");
}

Generator::Generator(Family family, double gamma) : family_(family), gamma_(gamma) {
  const auto bad = [&](const char* range) {
    throw RangeError("generator parameter gamma=" + std::to_string(gamma) + " outside " + range + " for " +
                     std::string(family_name(family)));
  };
  if (family == Family::Independence) {
    gamma_ = 0.0;
    return;
  }
  if (!std::isfinite(gamma)) bad("the finite reals");
  switch (family) {
    case Family::Clayton:
      if (gamma < -1.0 || gamma == 0.0) bad("[-1,0)u(0,inf)");
      break;
    case Family::Frank:
      if (gamma == 0.0) bad("R\\{0}");
      break;
    case Family::Gumbel:
      if (gamma < 1.0) bad("[1,inf)");
      break;
    case Family::AMH:
      if (gamma <= -1.0 || gamma >= 1.0) bad("(-1,1)");
      break;
    case Family::Independence: break;
  }
}

Generator Generator::parse(std::string_view text) {
  const auto colon = text.find(':');
  const Family f = parse_family(text.substr(0, colon));
  if (f == Family::Independence) {
    if (colon != std::string_view::npos) throw UsageError("independence takes no parameter");
    return {};
  }
  if (colon == std::string_view::npos) {
    throw UsageError("generator '" + std::string(text) + "' needs a parameter, e.g. clayton:1");
  }
  const std::string_view num = text.substr(colon + 1);
  double g = 0.0;
  const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), g);
  if (ec != std::errc{} || ptr != num.data() + num.size()) {
    throw UsageError("bad generator parameter '" + std::string(num) + "'");
  }
  return {f, g};
}

std::string Generator::to_string() const {
  if (family_ == Family::Independence) return "independence";
  std::ostringstream os;
  os.precision(17);
  os << family_name(family_) << ':' << gamma_;
  return os.str();
}

int Generator::monotone_order() const {
  switch (family_) {
    case Family::Clayton:
      if (gamma_ > 0.0) return kCompletelyMonotone;
      return static_cast<int>(std::floor(1.0 - 1.0 / gamma_ + 1e-12));
    case Family::Frank:
    case Family::AMH:
      return gamma_ >= 0.0 ? kCompletelyMonotone : 2;
    case Family::Independence:
    case Family::Gumbel:
      return kCompletelyMonotone;
  }
  return 2;
}

double Generator::psi(double t) const {
  require_t(t);
  if (std::isinf(t)) return 0.0;
  const double g = gamma_;
  switch (family_) {
    case Family::Independence: return std::exp(-t);
    case Family::Clayton: {
      if (g < 0.0 && 1.0 + g * t <= 0.0) return 0.0;
      return std::exp(-std::log1p(g * t) / g);
    }
    case Family::Frank: {
      if (g > 0.0) return -frank_pos_log_arg(t, g) / g;
      const double lc = -g + std::log(-std::expm1(g));
      return -softplus(lc - t) / g;
    }
    case Family::Gumbel: return std::exp(-std::pow(t, 1.0 / g));
    case Family::AMH: {
      const double e = std::exp(-t);
      return (1.0 - g) * e / (1.0 - g * e);
    }
  }
  return 0.0;
}

double Generator::phi(double u) const {
  require_u(u);
  if (u == 1.0) return 0.0;
  if (u == 0.0) return is_strict() ? kInfinity : -1.0 / gamma_;
  const double g = gamma_;
  switch (family_) {
    case Family::Independence: return -std::log(u);
    case Family::Clayton: return std::expm1(-g * std::log(u)) / g;
    case Family::Frank:
      if (g > 0.0) return log1mexp(g) - log1mexp(g * u);
      return logexpm1(-g) - logexpm1(-g * u);
    case Family::Gumbel: return std::pow(-std::log(u), g);
    case Family::AMH: return std::log1p(-g * (1.0 - u)) - std::log(u);
  }
  return 0.0;
}

double Generator::psi_prime(double t) const {
  require_t(t);
  if (std::isinf(t)) return 0.0;
  const double g = gamma_;
  switch (family_) {
    case Family::Independence: return -std::exp(-t);
    case Family::Clayton: {
      if (g < 0.0 && 1.0 + g * t <= 0.0) return g == -1.0 && 1.0 + g * t == 0.0 ? -1.0 : 0.0;
      return -std::exp(-(g + 1.0) / g * std::log1p(g * t));
    }
    case Family::Frank: {
      if (g > 0.0) return std::exp(-t) * std::expm1(-g) / (g * frank_pos_arg(t, g));
      const double lc = -g + std::log(-std::expm1(g));
      return 1.0 / (g * (1.0 + std::exp(t - lc)));
    }
    case Family::Gumbel: {
      if (t == 0.0) {
        if (g == 1.0) return -1.0;
        throw DomainError("gumbel psi' is singular at t=0 for gamma>1");
      }
      const double s = std::pow(t, 1.0 / g);
      return -(s / (g * t)) * std::exp(-s);
    }
    case Family::AMH: {
      const double e = std::exp(-t);
      const double d = 1.0 - g * e;
      return -(1.0 - g) * e / (d * d);
    }
  }
  return 0.0;
}

double Generator::psi_prime_of_phi(double u) const {
  require_u(u);
  const double g = gamma_;
  switch (family_) {
    case Family::Independence: return -u;
    case Family::Clayton:
      if (u == 0.0 && g > 0.0) return 0.0;
      return -std::pow(u, g + 1.0);
    case Family::Frank: return -std::expm1(g * u) / g;
    case Family::Gumbel: {
      if (g == 1.0) return -u;
      if (u == 1.0) throw DomainError("gumbel psi'(phi(u)) is singular at u=1 for gamma>1");
      if (u == 0.0) return 0.0;
      return -(u / g) * std::pow(-std::log(u), 1.0 - g);
    }
    case Family::AMH: return -u * (1.0 - g + g * u) / (1.0 - g);
  }
  return 0.0;
}

double Generator::kappa(double t) const {
  require_t(t);
  const double g = gamma_;
  switch (family_) {
    case Family::Independence: return 1.0;
    case Family::Clayton:
      if (g < 0.0 && 1.0 + g * t <= 0.0) throw DomainError("clayton K undefined outside the generator support");
      return 1.0 + g * t;
    case Family::Gumbel:
      if (std::isinf(t)) return kInfinity;
      return g * std::pow(t, (g - 1.0) / g);
    case Family::AMH:
      return 1.0 - g * std::exp(-t);
    case Family::Frank: {
      const double d = psi_prime(t);
      if (d == 0.0) throw DomainError("frank K undefined where psi' underflows");
      return -psi(t) / d;
    }
  }
  return 0.0;
}

double copula_value(const Generator& gen, std::span<const double> u) {
  if (u.empty()) throw RangeError("copula_value needs at least one argument");
  for (double v : u) require_u(v);
  for (double v : u) {
    if (v == 0.0) return 0.0;
  }
  if (gen.family() == Family::Independence) {
    double p = 1.0;
    for (double v : u) p *= v;
    return p;
  }
  CompensatedSum s;
  for (double v : u) {
    const double t = gen.phi(v);
    if (std::isinf(t)) return 0.0;
    s.add(t);
  }
  return gen.psi(s.value());
}

DMonotoneReport check_d_monotone(const Generator& gen, int d, std::span<const double> grid) {
  if (d < 2) throw RangeError("d-monotonicity needs d >= 2, got " + std::to_string(d));
  DMonotoneReport rep;
  rep.d = d;
  const auto psi_prime = [&gen](double t) { return gen.psi_prime(t); };
  for (double t : grid) {
    if (!(t > 0.0) || !std::isfinite(t)) throw RangeError("d-monotone grid points must lie in (0,inf)");
    ++rep.points_checked;
    const double v0 = gen.psi(t);
    if (v0 < 0.0) rep.violations.push_back({0, t, v0});
    for (int i = 1; i <= d - 2; ++i) {
      double value = 0.0;
      double noise = 0.0;
      if (i == 1) {
        value = gen.psi_prime(t);
        noise = 4.0 * kEpsilon * std::abs(value);
      } else {
        const DerivativeEstimate est = central_derivative(psi_prime, t, i - 1, 0.0);
        value = est.value;
        noise = 8.0 * est.noise;
      }
      const double signed_value = (i % 2 == 0) ? value : -value;
      if (signed_value < -noise) rep.violations.push_back({i, t, value});
    }
  }
  return rep;
}

}  // namespace copord
