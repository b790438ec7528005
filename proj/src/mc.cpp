#include "copula_order/mc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "copula_order/csv.hpp"
#include "copula_order/kernels.hpp"

namespace copord {

bool sampler_supports(const Generator& gen) {
  switch (gen.family()) {
    case Family::Independence:
    case Family::Gumbel:
      return true;
    case Family::Clayton:
    case Family::Frank:
      return gen.gamma() > 0.0;
    case Family::AMH:
      return gen.gamma() >= 0.0;
  }
  return false;
}

namespace {

// Logarithmic series distribution P(W = w) ∝ p^w / w.
double sample_log_series(double gamma, CounterRng& rng) {
  const double p = -std::expm1(-gamma);
  if (p < 0.95) {
    const double lg = -std::log1p(-p);
    double u = rng.uniform();
    double w = 1.0;
    double prob = p / lg;
    while (u > prob) {
      u -= prob;
      prob *= p * w / (w + 1.0);
      w += 1.0;
    }
    return w;
  }
  // Kemp's LK algorithm, efficient when p is close to 1.
  const double h = -gamma;  // log(1 − p)
  const double v = rng.uniform();
  if (v > p) return 1.0;
  const double q = -std::expm1(h * rng.uniform());
  if (v <= q * q) return std::floor(1.0 + std::log(v) / std::log(q));
  return v > q ? 1.0 : 2.0;
}

// Positive stable with Laplace transform exp(−s^a), 0 < a < 1.
double sample_positive_stable(double a, CounterRng& rng) {
  const double theta = M_PI * rng.uniform();
  const double e = rng.exponential();
  const double sa = std::sin(a * theta);
  const double s = std::sin(theta);
  const double s1 = std::sin((1.0 - a) * theta);
  return sa / std::pow(s, 1.0 / a) * std::pow(s1 / e, (1.0 - a) / a);
}

}  // namespace

double sample_frailty(const Generator& gen, CounterRng& rng) {
  if (!sampler_supports(gen)) {
    throw UnsupportedSampler("no frailty sampler for " + gen.to_string() +
                             "; negative-dependence parameters are not completely monotone");
  }
  const double g = gen.gamma();
  switch (gen.family()) {
    case Family::Independence: return 1.0;
    case Family::Clayton: return g * rng.gamma(1.0 / g);
    case Family::Gumbel: return g == 1.0 ? 1.0 : sample_positive_stable(1.0 / g, rng);
    case Family::Frank: return sample_log_series(g, rng);
    case Family::AMH:
      if (g == 0.0) return 1.0;
      return 1.0 + std::floor(std::log(rng.uniform()) / std::log(g));
  }
  return 1.0;
}

void sample_copula_row(const Generator& gen, CounterRng& rng, std::span<double> out) {
  const double w = sample_frailty(gen, rng);
  for (double& u : out) u = gen.psi(rng.exponential() / w);
}

std::vector<double> sample_copula(const Generator& gen, int n, std::size_t rows, std::uint64_t seed) {
  if (n < 1) throw RangeError("copula dimension must be >= 1");
  if (!sampler_supports(gen)) {
    throw UnsupportedSampler("no frailty sampler for " + gen.to_string() +
                             "; negative-dependence parameters are not completely monotone");
  }
  std::vector<double> out(rows * static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < rows; ++r) {
    CounterRng rng(seed, r);
    sample_copula_row(gen, rng, std::span<double>(out).subspan(r * static_cast<std::size_t>(n), static_cast<std::size_t>(n)));
  }
  return out;
}

SampleBatch sample_system(const SystemSpec& spec, std::size_t rows, std::uint64_t seed) {
  spec.validate();
  if (rows == 0) throw RangeError("sample count must be positive");
  if (!sampler_supports(spec.gen)) {
    throw UnsupportedSampler("no frailty sampler for " + spec.gen.to_string() +
                             "; negative-dependence parameters are not completely monotone");
  }
  kernels::SampleBuffers buf = kernels::sample_parallel(spec, rows, seed);
  SampleBatch b;
  b.seed = seed;
  b.n = spec.n();
  b.rows = rows;
  b.lifetimes = std::move(buf.lifetimes);
  b.order_stats = std::move(buf.order_stats);
  return b;
}

void write_batch_csv(std::ostream& os, const SampleBatch& batch) {
  os << "row";
  for (int i = 1; i <= batch.n; ++i) os << ",x" << i;
  os << ",order_stat\n";
  const auto n = static_cast<std::size_t>(batch.n);
  for (std::size_t r = 0; r < batch.rows; ++r) {
    os << r;
    for (std::size_t i = 0; i < n; ++i) os << ',' << format_double(batch.lifetimes[r * n + i]);
    os << ',' << format_double(batch.order_stats[r]) << '\n';
  }
}

std::vector<double> default_probe_levels() {
  std::vector<double> p;
  for (int j = 1; j <= 19; ++j) p.push_back(0.05 * j);
  return p;
}

ValidationReport validate_sample(std::span<const double> order_stats, const std::function<double(double)>& cdf,
                                 std::span<const double> probe_x, double z_threshold) {
  if (order_stats.empty()) throw RangeError("validation needs at least one sample");
  if (!(z_threshold > 0.0)) throw RangeError("z threshold must be positive");
  std::vector<double> sorted(order_stats.begin(), order_stats.end());
  std::sort(sorted.begin(), sorted.end());
  const double N = static_cast<double>(sorted.size());
  ValidationReport rep;
  rep.samples = sorted.size();
  rep.z_threshold = z_threshold;
  for (double x : probe_x) {
    Probe p;
    p.x = x;
    p.cdf = cdf(x);
    p.p = p.cdf;
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    p.empirical = static_cast<double>(count) / N;
    const double sd = std::sqrt(p.cdf * (1.0 - p.cdf) / N);
    const double diff = std::abs(p.empirical - p.cdf);
    p.z = sd > 0.0 ? diff / sd : (diff == 0.0 ? 0.0 : kInfinity);
    rep.max_z = std::max(rep.max_z, p.z);
    if (p.z > z_threshold) rep.pass = false;
    rep.probes.push_back(p);
  }
  return rep;
}

ValidationReport validate_closed_form(const SystemSpec& spec, std::size_t rows, std::uint64_t seed,
                                      double z_threshold) {
  const SampleBatch batch = sample_system(spec, rows, seed);
  const std::vector<double> levels = default_probe_levels();
  std::vector<double> xs;
  for (double p : levels) xs.push_back(system_quantile(spec, p));
  ValidationReport rep =
      validate_sample(batch.order_stats, [&spec](double x) { return koutofn_cdf(spec, x); }, xs, z_threshold);
  rep.seed = seed;
  for (std::size_t i = 0; i < levels.size(); ++i) rep.probes[i].p = levels[i];
  return rep;
}

nlohmann::json to_json(const ValidationReport& r) {
  nlohmann::json probes = nlohmann::json::array();
  for (const Probe& p : r.probes) {
    probes.push_back({{"p", p.p}, {"x", p.x}, {"cdf", p.cdf}, {"empirical", p.empirical}, {"z", p.z}});
  }
  return {{"pass", r.pass},       {"samples", r.samples}, {"seed", r.seed},
          {"z_threshold", r.z_threshold}, {"max_z", r.max_z},     {"probes", probes}};
}

}  // namespace copord
