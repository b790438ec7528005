#include <exception>

#include "kernels_detail.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace copord::kernels {

namespace {

// Runs body(i) for i in [0, count) across threads; the first exception is
// rethrown on the calling thread.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  std::exception_ptr error;
  const auto total = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(copord_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<double> cdf_grid_parallel(const SystemSpec& spec, std::span<const double> xs, EvalMode mode) {
  spec.validate();
  std::vector<double> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = koutofn_cdf(spec, xs[i], mode); });
  return out;
}

std::vector<double> schur_grid_parallel(const SystemSpec& spec, std::span<const double> xs, int ell, int m,
                                        EvalMode mode) {
  detail::check_pair(spec, ell, m);
  std::vector<double> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) { out[i] = detail::schur_at(spec, xs[i], ell, m, mode); });
  return out;
}

SampleBuffers sample_parallel(const SystemSpec& spec, std::size_t rows, std::uint64_t seed) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.n());
  SampleBuffers b;
  b.lifetimes.resize(rows * n);
  b.order_stats.resize(rows);
  const std::size_t chunk = 1024;
  const std::size_t chunks = (rows + chunk - 1) / chunk;
  parallel_for(chunks, [&](std::size_t c) {
    std::vector<double> scratch;
    const std::size_t end = std::min(rows, (c + 1) * chunk);
    for (std::size_t r = c * chunk; r < end; ++r) {
      b.order_stats[r] = detail::sample_row(spec, seed, r, b.lifetimes.data() + r * n, scratch);
    }
  });
  return b;
}

}  // namespace copord::kernels
