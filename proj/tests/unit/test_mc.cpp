#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "copula_order/cli.hpp"
#include "copula_order/mc.hpp"

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

std::vector<Generator> supported() {
  return {Generator::independence(), Generator::clayton(1.0), Generator::clayton(0.3), Generator::gumbel(1.0),
          Generator::gumbel(2.5),    Generator::frank(0.5),   Generator::frank(5.0),   Generator::frank(30.0),
          Generator::amh(0.6)};
}

// Asymptotic 1% critical value of the Kolmogorov distribution.
constexpr double kKs01 = 1.6276;

double ks_uniform(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const double N = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    d = std::max({d, (i + 1) / N - v[i], v[i] - i / N});
  }
  return d;
}

}  // namespace

TEST_CASE("random streams") {
  CounterRng a(1, 0), b(1, 0), c(1, 1), d(2, 0);
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
  }
  CounterRng u(9, 3);
  double sum = 0, sq = 0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) {
    const double v = u.uniform();
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    sum += v;
    sq += v * v;
  }
  CHECK(std::abs(sum / N - 0.5) < 4 * std::sqrt(1.0 / 12 / N));
  CounterRng gr(4, 4);
  for (double shape : {0.3, 1.0, 4.5}) {
    double m = 0;
    for (int i = 0; i < N; ++i) m += gr.gamma(shape);
    CHECK(std::abs(m / N - shape) < 4 * std::sqrt(shape / N));
  }
}

TEST_CASE("copula columns are uniform") {
  const std::size_t N = 100000;
  for (const Generator& g : supported()) {
    CAPTURE(g.to_string());
    const std::vector<double> u = sample_copula(g, 3, N, 77);
    for (int col = 0; col < 3; ++col) {
      std::vector<double> c;
      c.reserve(N);
      for (std::size_t r = 0; r < N; ++r) c.push_back(u[r * 3 + col]);
      CHECK(ks_uniform(c) * std::sqrt(static_cast<double>(N)) < kKs01);
    }
  }
}

TEST_CASE("empirical copula matches the closed form") {
  const std::size_t N = 100000;
  const double band = 3.0;
  CHECK(copula_value(Generator::clayton(1.0), std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0 / 3.0));
  for (const Generator& g : supported()) {
    CAPTURE(g.to_string());
    const std::vector<double> u = sample_copula(g, 3, N, 101);
    for (const std::vector<double>& probe : {std::vector<double>{0.5, 0.5, 1.0}, std::vector<double>{0.3, 0.8, 1.0},
                                             std::vector<double>{0.6, 0.6, 0.6}}) {
      const double C = copula_value(g, probe);
      std::size_t hits = 0;
      for (std::size_t r = 0; r < N; ++r) {
        hits += u[r * 3] <= probe[0] && u[r * 3 + 1] <= probe[1] && u[r * 3 + 2] <= probe[2];
      }
      const double emp = static_cast<double>(hits) / N;
      CHECK(std::abs(emp - C) <= band * std::sqrt(C * (1 - C) / N));
    }
  }
  // Gumbel γ = 1 is the product copula.
  CHECK(copula_value(Generator::gumbel(1.0), std::vector<double>{0.5, 0.5}) == doctest::Approx(0.25));
}

TEST_CASE("single exponential component") {
  const std::size_t N = 100000;
  const SampleBatch b = sample_system(make(0, Generator::clayton(2.0), {2.0}), N, 5);
  double mean = 0.0;
  for (double x : b.order_stats) {
    CHECK(x >= 0.0);
    mean += x;
  }
  mean /= N;
  CHECK(std::abs(mean - 0.5) <= 3 * 0.5 / std::sqrt(static_cast<double>(N)));
}

TEST_CASE("closed forms pass against samples") {
  const std::size_t N = 200000;
  const std::vector<SystemSpec> specs = {
      make(0, Generator::independence(), {1.0, 2.0, 3.0}),
      fig1_spec(),
      make(2, Generator::clayton(2.0), {1.0, 2.0, 3.0}),
      make(2, Generator::gumbel(2.0), {1.0, 2.0, 3.0}),
      make(0, Generator::frank(4.0), {0.5, 1.5}, Transform::prhr()),
      make(1, Generator::amh(0.7), {0.5, 1.0, 2.0, 4.0}, Transform::omo(1.5), Baseline::weibull(2.0, 1.0)),
      make(3, Generator::clayton(0.7), {0.5, 1.0, 2.0, 4.0}, Transform::omo(0.7)),
  };
  for (const SystemSpec& s : specs) {
    CAPTURE(s.gen.to_string());
    CAPTURE(s.k);
    const ValidationReport r = validate_closed_form(s, N, 20240101);
    CHECK(r.pass);
    CHECK(r.probes.size() == 19);
    CHECK(r.max_z <= 4.0);
  }
}

TEST_CASE("off-by-one in k is detected") {
  const std::size_t N = 200000;
  const SystemSpec s = fig1_spec();
  const SampleBatch b = sample_system(s, N, 8);
  SystemSpec wrong = s;
  wrong.k = 0;
  std::vector<double> xs;
  for (double p : default_probe_levels()) xs.push_back(system_quantile(s, p));
  const ValidationReport bad = validate_sample(b.order_stats, [&](double x) { return koutofn_cdf(wrong, x); }, xs, 4.0);
  CHECK_FALSE(bad.pass);
  const ValidationReport good = validate_sample(b.order_stats, [&](double x) { return koutofn_cdf(s, x); }, xs, 4.0);
  CHECK(good.pass);
}

TEST_CASE("order statistics of shared rows are ordered") {
  const SampleBatch b = sample_system(make(0, Generator::clayton(1.5), {1.0, 2.0, 3.0, 4.0}), 20000, 3);
  const std::size_t n = 4;
  std::vector<std::vector<double>> by_rank(n);
  for (std::size_t r = 0; r < b.rows; ++r) {
    std::vector<double> row(b.lifetimes.begin() + r * n, b.lifetimes.begin() + (r + 1) * n);
    std::sort(row.begin(), row.end());
    for (std::size_t j = 0; j < n; ++j) by_rank[j].push_back(row[j]);
    CHECK(b.order_stats[r] == row[n - 1]);
  }
  for (double x : {0.2, 0.5, 1.0}) {
    std::size_t prev = b.rows;
    for (std::size_t j = 0; j < n; ++j) {
      const auto c = static_cast<std::size_t>(std::count_if(by_rank[j].begin(), by_rank[j].end(),
                                                            [x](double v) { return v <= x; }));
      CHECK(c <= prev);
      prev = c;
    }
  }
}

TEST_CASE("determinism") {
  const SystemSpec s = make(1, Generator::gumbel(1.7), {1.0, 2.0, 3.0});
  const SampleBatch a = sample_system(s, 5000, 42);
  const SampleBatch b = sample_system(s, 5000, 42);
  const SampleBatch c = sample_system(s, 5000, 43);
  CHECK(a.lifetimes == b.lifetimes);
  CHECK(a.order_stats == b.order_stats);
  CHECK(a.lifetimes != c.lifetimes);
  // Row r depends only on (seed, r).
  const SampleBatch head = sample_system(s, 100, 42);
  CHECK(std::equal(head.lifetimes.begin(), head.lifetimes.end(), a.lifetimes.begin()));
  CHECK(sample_copula(Generator::frank(3.0), 2, 50, 1) == sample_copula(Generator::frank(3.0), 2, 50, 1));
}

TEST_CASE("unsupported samplers") {
  CHECK_FALSE(sampler_supports(Generator::clayton(-0.5)));
  CHECK_FALSE(sampler_supports(Generator::frank(-2.0)));
  CHECK_FALSE(sampler_supports(Generator::amh(-0.3)));
  CHECK(sampler_supports(Generator::amh(0.3)));
  CHECK_THROWS_AS(sample_copula(Generator::clayton(-0.5), 2, 10, 1), UnsupportedSampler);
  CHECK_THROWS_AS(sample_system(make(0, Generator::frank(-2.0), {1.0, 2.0}), 10, 1), UnsupportedSampler);
  CHECK_THROWS_AS(validate_closed_form(make(0, Generator::amh(-0.3), {1.0, 2.0}), 10, 1), UnsupportedSampler);
  // The closed form still evaluates.
  CHECK(std::isfinite(koutofn_cdf(make(0, Generator::frank(-2.0), {1.0, 2.0}), 1.0)));
}

TEST_CASE("batch export and report shape") {
  const SampleBatch b = sample_system(make(1, Generator::clayton(1.0), {1.0, 2.0}), 3, 7);
  std::ostringstream os;
  write_batch_csv(os, b);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "row,x1,x2,order_stat");
  int rows = 0;
  while (std::getline(is, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
    CHECK(line.rfind(std::to_string(rows) + ",", 0) == 0);
    ++rows;
  }
  CHECK(rows == 3);

  const ValidationReport r = validate_closed_form(make(0, Generator::independence(), {1.0}), 1000, 9);
  const nlohmann::json j = to_json(r);
  for (const char* key : {"pass", "samples", "seed", "z_threshold", "max_z", "probes"}) CHECK(j.contains(key));
  CHECK(j["probes"].size() == 19);
  CHECK(j["probes"][0].contains("empirical"));
  CHECK_THROWS_AS(validate_sample(std::vector<double>{}, [](double) { return 0.5; }, std::vector<double>{1.0}, 4.0),
                  RangeError);
}
