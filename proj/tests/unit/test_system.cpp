#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "copula_order/system.hpp"
#include "oracles.hpp"

using namespace copord;

namespace {

SystemSpec make(int k, Generator g, std::vector<double> params, Transform t = Transform::phr(),
                Baseline b = Baseline::std_exponential()) {
  SystemSpec s;
  s.k = k;
  s.gen = g;
  s.transform = t;
  s.baseline = b;
  s.params = std::move(params);
  return s;
}

std::vector<Generator> generator_pool() {
  return {Generator::independence(), Generator::clayton(0.5), Generator::clayton(2.0), Generator::clayton(-0.3),
          Generator::gumbel(1.5),    Generator::frank(3.0),   Generator::frank(-2.0),  Generator::amh(0.5),
          Generator::amh(-0.4)};
}

SystemSpec random_spec(std::mt19937_64& rng, int max_n = 6) {
  const auto gens = generator_pool();
  const std::vector<Transform> ts = {Transform::phr(), Transform::prhr(), Transform::omo(1.0), Transform::omo(0.6)};
  const std::vector<Baseline> bs = {Baseline::std_exponential(), Baseline::weibull(1.7, 1.2)};
  std::uniform_int_distribution<int> n_dist(1, max_n);
  std::uniform_real_distribution<double> a_dist(0.3, 4.0);
  const int n = n_dist(rng);
  std::vector<double> params(static_cast<std::size_t>(n));
  for (double& a : params) a = a_dist(rng);
  const int k = std::uniform_int_distribution<int>(0, n - 1)(rng);
  return make(k, gens[rng() % gens.size()], params, ts[rng() % ts.size()], bs[rng() % bs.size()]);
}

std::vector<double> us(const SystemSpec& s, double x) {
  std::vector<double> u;
  for (double a : s.params) u.push_back(transform_cdf(s.transform, s.baseline, a, x));
  return u;
}

// Five-point central difference of the system CDF in params[ell].
double fd_dparam(SystemSpec s, double x, int ell) {
  const double a = s.params[static_cast<std::size_t>(ell)];
  const double h = 1e-3 * a;
  const auto F = [&](double v) {
    s.params[static_cast<std::size_t>(ell)] = v;
    return koutofn_cdf(s, x);
  };
  return (-F(a + 2 * h) + 8 * F(a + h) - 8 * F(a - h) + F(a - 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("parallel and series examples") {
  const SystemSpec one = make(0, Generator::clayton(1.0), {1.7});
  for (double x : {0.1, 0.8, 2.5}) {
    CHECK(parallel_cdf(one, x) == doctest::Approx(transform_cdf(one.transform, one.baseline, 1.7, x)).epsilon(1e-14));
    CHECK(series_survival(one, x) ==
          doctest::Approx(1.0 - transform_cdf(one.transform, one.baseline, 1.7, x)).epsilon(1e-13));
  }
  const SystemSpec ind = make(0, Generator::independence(), {1.0, 2.0});
  CHECK(parallel_cdf(ind, 1.0) == doctest::Approx((1 - std::exp(-1.0)) * (1 - std::exp(-2.0))).epsilon(1e-14));
  CHECK(series_survival(ind, 1.0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));

  // ψ(t) = 1/(1+t), φ(u) = 1/u − 1.
  const SystemSpec cl = make(0, Generator::clayton(1.0), {1.0, 2.0});
  const double u1 = 1 - std::exp(-1.0), u2 = 1 - std::exp(-2.0);
  CHECK(parallel_cdf(cl, 1.0) == doctest::Approx(1.0 / (1.0 / u1 + 1.0 / u2 - 1.0)).epsilon(1e-13));

  // Gumbel: ψ(t) = exp(−t^{1/γ}), φ(s) = (−log s)^γ with −log S_i(1) = α_i.
  const SystemSpec gu = make(1, Generator::gumbel(2.0), {1.0, 1.0});
  CHECK(series_survival(gu, 1.0) == doctest::Approx(std::exp(-std::sqrt(2.0))).epsilon(1e-13));
}

TEST_CASE("two-out-of-three matches the expanded formula") {
  const SystemSpec s = make(1, Generator::clayton(1.0), {1.0, 2.5, 4.0});
  const auto psi = [](double t) { return 1.0 / (1.0 + t); };
  for (double x = 0.05; x < 6.0; x += 0.37) {
    const auto u = us(s, x);
    const double t1 = 1 / u[0] - 1, t2 = 1 / u[1] - 1, t3 = 1 / u[2] - 1;
    const double ref = psi(t1 + t2) + psi(t1 + t3) + psi(t2 + t3) - 2 * psi(t1 + t2 + t3);
    CAPTURE(x);
    CHECK(koutofn_cdf(s, x) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("independence matches the binomial and lattice oracles") {
  const SystemSpec ex = make(2, Generator::independence(), {1.3, 1.3, 1.3, 1.3});
  for (double x = 0.05; x < 4.0; x += 0.25) {
    const double p = 1 - std::exp(-1.3 * x);
    CHECK(koutofn_cdf(ex, x) == doctest::Approx(oracle::binomial_at_least(p, 4, 2)).epsilon(1e-12));
  }
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 40; ++rep) {
    SystemSpec s = random_spec(rng);
    s.gen = Generator::independence();
    for (double x = 0.05; x < 5.0; x += 0.3) {
      const double ref = oracle::independent_at_least(us(s, x), s.n() - s.k);
      CHECK(std::abs(koutofn_cdf(s, x) - ref) <= 1e-10);
      CHECK(std::abs(koutofn_cdf_inclusion_exclusion(s, x) - ref) <= 1e-10);
      if (s.k == 0) CHECK(std::abs(parallel_cdf(s, x) - ref) <= 1e-10);
      if (s.k == s.n() - 1) CHECK(std::abs(1.0 - series_survival(s, x) - ref) <= 1e-10);
    }
  }
}

TEST_CASE("boundary reductions") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 60; ++rep) {
    SystemSpec s = random_spec(rng);
    CAPTURE(s.gen.to_string());
    for (double x = 0.02; x < 6.0; x += 0.2) {
      s.k = 0;
      CHECK(std::abs(koutofn_cdf_inclusion_exclusion(s, x) - parallel_cdf(s, x)) <= 1e-12);
      CHECK(std::abs(koutofn_cdf(s, x) - parallel_cdf(s, x)) <= 1e-12);
      s.k = s.n() - 1;
      CHECK(std::abs(koutofn_cdf(s, x) - (1.0 - series_survival(s, x))) <= 1e-12);
    }
  }
}

TEST_CASE("inclusion-exclusion matches the lattice of the lifetime copula") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 60; ++rep) {
    const SystemSpec s = random_spec(rng);
    // Invalid copulas leave [0,1] and get clamped.
    if (s.gen.monotone_order() < s.n()) continue;
    const std::string fam(family_name(s.gen.family()));
    const double g = s.gen.gamma();
    const auto C = [&](const std::vector<double>& v) {
      double t = 0.0;
      for (double x : v) t += x == 1.0 ? 0.0 : oracle::naive_phi(fam, g, x);
      return oracle::naive_psi(fam, g, t);
    };
    CAPTURE(s.gen.to_string());
    CAPTURE(s.n());
    CAPTURE(s.k);
    for (double x = 0.05; x < 5.0; x += 0.35) {
      const auto u = us(s, x);
      bool interior = true;
      for (double v : u) interior = interior && v > 1e-6 && v < 1.0 - 1e-6;
      if (!interior) continue;
      const double ref = oracle::joint_at_least(C, u, s.n() - s.k);
      CHECK(std::abs(koutofn_cdf_inclusion_exclusion(s, x) - ref) <= 1e-9);
    }
  }
}

TEST_CASE("series and lifetime-copula forms coincide only under radial symmetry") {
  SystemSpec s = make(2, Generator::independence(), {1.0, 2.0, 3.0});
  CHECK(std::abs(koutofn_cdf_inclusion_exclusion(s, 0.4) - koutofn_cdf(s, 0.4)) <= 1e-14);
  s.gen = Generator::clayton(2.0);
  CHECK(std::abs(koutofn_cdf_inclusion_exclusion(s, 0.4) - koutofn_cdf(s, 0.4)) > 1e-3);
}

TEST_CASE("cdf validity and ordering in k") {
  std::mt19937_64 rng(13);
  int checked = 0;
  for (int rep = 0; rep < 80; ++rep) {
    SystemSpec s = random_spec(rng);
    // Only generators that define an n-dimensional copula give probabilities.
    if (s.gen.monotone_order() < s.n()) continue;
    ++checked;
    CAPTURE(s.gen.to_string());
    CHECK(koutofn_cdf(s, 0.0) == 0.0);
    CHECK(koutofn_cdf(s, -1.0) == 0.0);
    CHECK(koutofn_cdf(s, 200.0) == doctest::Approx(1.0));
    double prev = 0.0;
    for (double x = 0.02; x < 6.0; x += 0.1) {
      const double F = koutofn_cdf(s, x);
      CHECK(F >= 0.0);
      CHECK(F <= 1.0);
      CHECK(F >= prev - 1e-13);
      prev = F;
      // Tolerating more failures can only delay the system failure. The
      // series form uses the survival copula, so the chain stops at n − 2.
      SystemSpec lower = s;
      for (int k = 1; k < s.n(); ++k) {
        lower.k = k - 1;
        const double Flo = koutofn_cdf_inclusion_exclusion(lower, x);
        lower.k = k;
        CHECK(Flo <= koutofn_cdf_inclusion_exclusion(lower, x) + 1e-12);
        if (k < s.n() - 1) CHECK(Flo <= koutofn_cdf(lower, x) + 1e-12);
      }
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("system quantile inverts the cdf") {
  const SystemSpec s = make(1, Generator::gumbel(2.0), {1.0, 2.0, 3.0});
  for (double p : {0.01, 0.3, 0.5, 0.9, 0.999}) {
    CHECK(koutofn_cdf(s, system_quantile(s, p)) == doctest::Approx(p).epsilon(1e-9));
  }
  CHECK_THROWS_AS(system_quantile(s, 1.0), RangeError);
}

TEST_CASE("system validation") {
  CHECK_THROWS_AS(koutofn_cdf(make(3, Generator::clayton(1.0), {1.0, 2.0, 3.0}), 1.0), RangeError);
  CHECK_THROWS_AS(koutofn_cdf(make(0, Generator::clayton(1.0), {1.0, -2.0}), 1.0), RangeError);
  CHECK_THROWS_AS(koutofn_cdf(make(0, Generator::clayton(1.0), {}), 1.0), RangeError);
  CHECK_THROWS_AS(koutofn_cdf(make(1, Generator::clayton(1.0), std::vector<double>(26, 1.0)), 1.0), ResourceError);
}

TEST_CASE("eval point") {
  const SystemSpec s = make(0, Generator::clayton(1.0), {1.0});
  const EvalPoint p = eval_point(s, std::log(2.0));
  REQUIRE(p.u.size() == 1);
  CHECK(p.u[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p.t[0] == doctest::Approx(1.0).epsilon(1e-14));
  const EvalPoint z = eval_point(make(1, Generator::clayton(1.0), {1.0, 2.0, 3.0}), 0.0);
  CHECK(z.u.size() == 3);
  CHECK(z.t.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(z.u[i] == kClampLow);
    CHECK(std::isfinite(z.t[i]));
    CHECK(z.t[i] == doctest::Approx(1.0 / kClampLow - 1.0));
  }
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 30; ++rep) {
    const SystemSpec r = random_spec(rng);
    for (double x = 0.05; x < 5.0; x += 0.45) {
      const EvalPoint e = eval_point(r, x);
      for (std::size_t i = 0; i < e.u.size(); ++i) {
        CHECK(std::abs(r.gen.psi(e.t[i]) - e.u[i]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("parameter derivative: series under independence") {
  const SystemSpec s = make(1, Generator::independence(), {1.2, 0.7});
  for (double x : {0.3, 1.0, 2.2}) {
    const auto u = us(s, x);
    const double du1 = x * std::exp(-1.2 * x);
    CHECK(koutofn_cdf_dparam(s, x, 0) == doctest::Approx((1 - u[1]) * du1).epsilon(1e-12));
    CHECK(koutofn_cdf_dparam_difference_form(s, x, 0) == doctest::Approx((1 - u[1]) * du1).epsilon(1e-12));
  }
}

TEST_CASE("parameter derivative: two-out-of-three clayton expression") {
  const SystemSpec s = make(1, Generator::clayton(1.0), {1.0, 2.5, 4.0});
  const auto dpsi = [](double t) { return -1.0 / ((1.0 + t) * (1.0 + t)); };
  for (double x = 0.1; x < 5.0; x += 0.3) {
    const auto u = us(s, x);
    std::vector<double> t(3);
    for (int i = 0; i < 3; ++i) t[i] = 1 / u[i] - 1;
    for (int l = 0; l < 3; ++l) {
      // t_l' = φ'(u_l) ∂u_l/∂α_l with φ'(u) = −1/u², ∂u/∂α = x e^{−αx}.
      const double tl_prime = -1.0 / (u[l] * u[l]) * x * std::exp(-s.params[l] * x);
      double inner = -2.0 * dpsi(t[0] + t[1] + t[2]);
      for (int j = 0; j < 3; ++j) {
        if (j != l) inner += dpsi(t[l] + t[j]);
      }
      CAPTURE(x);
      CAPTURE(l);
      CHECK(koutofn_cdf_dparam(s, x, l) == doctest::Approx(tl_prime * inner).epsilon(1e-10));
      CHECK(koutofn_cdf_dparam_difference_form(s, x, l) == doctest::Approx(tl_prime * inner).epsilon(1e-10));
    }
  }
}

TEST_CASE("parameter derivative routes agree with each other and with differences") {
  std::mt19937_64 rng(19);
  int compared = 0;
  for (int rep = 0; rep < 60; ++rep) {
    const SystemSpec s = random_spec(rng, 5);
    CAPTURE(s.gen.to_string());
    CAPTURE(s.k);
    CAPTURE(s.n());
    for (int j = 1; j <= 8; ++j) {
      const double x = system_quantile(s, j / 9.0);
      for (int l = 0; l < s.n(); ++l) {
        const double a = koutofn_cdf_dparam(s, x, l);
        const double b = koutofn_cdf_dparam_difference_form(s, x, l);
        const double fd = fd_dparam(s, x, l);
        CHECK(oracle::rel_diff(a, b, 1e-12) < 1e-9);
        // The difference quotient carries about eps/h ~ 1e-13 of rounding.
        CHECK(oracle::rel_diff(a, fd, 1e-6) < 1e-6);
        // The sign follows ∂T/∂α.
        const double dT = transform_cdf_dparam(s.transform, s.baseline, s.params[l], x);
        if (std::abs(a) > 1e-12) CHECK((a > 0) == (dT > 0));
        ++compared;
      }
    }
  }
  CHECK(compared > 500);
}

TEST_CASE("parameter derivative boundary handling") {
  const SystemSpec s = make(1, Generator::clayton(1.0), {1.0, 2.0, 3.0});
  CHECK_THROWS_AS(koutofn_cdf_dparam(s, 0.0, 0, EvalMode::Raw), DomainError);
  CHECK(std::isfinite(koutofn_cdf_dparam(s, 0.0, 0, EvalMode::Safe)));
  CHECK_THROWS_AS(koutofn_cdf_dparam(s, 1.0, 3), RangeError);
}
