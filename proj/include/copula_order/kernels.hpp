#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "copula_order/system.hpp"

namespace copord::kernels {

/// Grid kernels. Each has a serial reference and an OpenMP version that
/// writes the same values into the same slots, so the two agree bit for bit.

std::vector<double> cdf_grid_serial(const SystemSpec& spec, std::span<const double> xs, EvalMode mode);
std::vector<double> cdf_grid_parallel(const SystemSpec& spec, std::span<const double> xs, EvalMode mode);

/// (α_ℓ − α_m)(∂F/∂α_ℓ − ∂F/∂α_m) at every x.
std::vector<double> schur_grid_serial(const SystemSpec& spec, std::span<const double> xs, int ell, int m,
                                      EvalMode mode);
std::vector<double> schur_grid_parallel(const SystemSpec& spec, std::span<const double> xs, int ell, int m,
                                        EvalMode mode);

/// Draws `rows` lifetime vectors (row-major, rows × n) and their (n−k)-th
/// order statistics. Row r depends only on (seed, r).
struct SampleBuffers {
  std::vector<double> lifetimes;
  std::vector<double> order_stats;
};

SampleBuffers sample_serial(const SystemSpec& spec, std::size_t rows, std::uint64_t seed);
SampleBuffers sample_parallel(const SystemSpec& spec, std::size_t rows, std::uint64_t seed);

/// Number of threads the OpenMP kernels would use (1 without OpenMP).
int max_threads();

}  // namespace copord::kernels
