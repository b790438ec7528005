#include "kernels_detail.hpp"

namespace copord::kernels {

std::vector<double> cdf_grid_serial(const SystemSpec& spec, std::span<const double> xs, EvalMode mode) {
  spec.validate();
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = koutofn_cdf(spec, xs[i], mode);
  return out;
}

std::vector<double> schur_grid_serial(const SystemSpec& spec, std::span<const double> xs, int ell, int m,
                                      EvalMode mode) {
  detail::check_pair(spec, ell, m);
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = detail::schur_at(spec, xs[i], ell, m, mode);
  return out;
}

SampleBuffers sample_serial(const SystemSpec& spec, std::size_t rows, std::uint64_t seed) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.n());
  SampleBuffers b;
  b.lifetimes.resize(rows * n);
  b.order_stats.resize(rows);
  std::vector<double> scratch;
  for (std::size_t r = 0; r < rows; ++r) {
    b.order_stats[r] = detail::sample_row(spec, seed, r, b.lifetimes.data() + r * n, scratch);
  }
  return b;
}

}  // namespace copord::kernels
