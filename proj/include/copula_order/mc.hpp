#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

#include <json.hpp>

#include "copula_order/rng.hpp"
#include "copula_order/system.hpp"

namespace copord {

/// True when the frailty sampler covers this generator (positive dependence
/// or independence).
bool sampler_supports(const Generator& gen);

/// Draws the shared frailty W whose Laplace transform is ψ.
double sample_frailty(const Generator& gen, CounterRng& rng);

/// Fills `out` with one copula draw U_i = ψ(E_i / W).
void sample_copula_row(const Generator& gen, CounterRng& rng, std::span<double> out);

/// N × n copula draws, row-major.
std::vector<double> sample_copula(const Generator& gen, int n, std::size_t rows, std::uint64_t seed);

struct SampleBatch {
  std::uint64_t seed = 0;
  int n = 0;
  std::size_t rows = 0;
  std::vector<double> lifetimes;    // rows × n
  std::vector<double> order_stats;  // (n−k)-th smallest lifetime per row
};

/// Lifetimes are coupled through their CDFs, except for series systems where
/// the copula acts on the survivals as in `series_survival`.
SampleBatch sample_system(const SystemSpec& spec, std::size_t rows, std::uint64_t seed);

/// CSV with header row,x1,...,xn,order_stat.
void write_batch_csv(std::ostream& os, const SampleBatch& batch);

struct Probe {
  double p = 0.0;
  double x = 0.0;
  double cdf = 0.0;
  double empirical = 0.0;
  double z = 0.0;
};

struct ValidationReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double z_threshold = 4.0;
  double max_z = 0.0;
  bool pass = true;
  std::vector<Probe> probes;
};

/// The 19 probe levels 0.05, 0.10, ..., 0.95.
std::vector<double> default_probe_levels();

/// Compares the empirical CDF of `order_stats` with `cdf` at each x of
/// `probe_x`; a probe passes when |F̂ − F| ≤ z·sqrt(F(1 − F)/N).
ValidationReport validate_sample(std::span<const double> order_stats, const std::function<double(double)>& cdf,
                                 std::span<const double> probe_x, double z_threshold);

/// Samples the system and validates its closed-form CDF at its own
/// quantiles for the default probe levels.
ValidationReport validate_closed_form(const SystemSpec& spec, std::size_t rows, std::uint64_t seed,
                                      double z_threshold = 4.0);

nlohmann::json to_json(const ValidationReport& r);

}  // namespace copord
