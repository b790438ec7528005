#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "copula_order/cli.hpp"
#include "copula_order/grid.hpp"
#include "copula_order/kernels.hpp"

using namespace copord;

namespace {

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<SystemSpec> specs() {
  std::vector<SystemSpec> v;
  v.push_back(fig1_spec());
  SystemSpec s = fig1_spec();
  s.k = 0;
  s.gen = Generator::gumbel(2.0);
  v.push_back(s);
  s.k = 2;
  s.gen = Generator::frank(4.0);
  v.push_back(s);
  s.params = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0};
  s.k = 3;
  s.gen = Generator::amh(0.4);
  s.transform = Transform::omo(1.3);
  v.push_back(s);
  return v;
}

}  // namespace

TEST_CASE("serial and OpenMP grids agree bit for bit") {
  const std::vector<double> xs = uniform_grid(0.0, 8.0, 1001);
  for (const SystemSpec& s : specs()) {
    CAPTURE(s.gen.to_string());
    CHECK(bit_equal(kernels::cdf_grid_serial(s, xs, EvalMode::Safe), kernels::cdf_grid_parallel(s, xs, EvalMode::Safe)));
    CHECK(bit_equal(kernels::schur_grid_serial(s, xs, 0, 1, EvalMode::Safe),
                    kernels::schur_grid_parallel(s, xs, 0, 1, EvalMode::Safe)));
  }
}

TEST_CASE("serial and OpenMP sampling agree bit for bit") {
  for (const SystemSpec& s : specs()) {
    CAPTURE(s.gen.to_string());
    for (std::size_t rows : {1u, 1023u, 1024u, 5000u}) {
      const kernels::SampleBuffers a = kernels::sample_serial(s, rows, 99);
      const kernels::SampleBuffers b = kernels::sample_parallel(s, rows, 99);
      CHECK(bit_equal(a.lifetimes, b.lifetimes));
      CHECK(bit_equal(a.order_stats, b.order_stats));
      CHECK(a.order_stats.size() == rows);
    }
  }
}

TEST_CASE("kernel errors propagate from the parallel region") {
  SystemSpec s = fig1_spec();
  const std::vector<double> xs{0.0, 1.0};
  CHECK_THROWS_AS(kernels::schur_grid_parallel(s, xs, 0, 1, EvalMode::Raw), DomainError);
  CHECK_THROWS_AS(kernels::schur_grid_serial(s, xs, 0, 1, EvalMode::Raw), DomainError);
  CHECK_THROWS_AS(kernels::schur_grid_parallel(s, xs, 0, 7, EvalMode::Safe), RangeError);
  CHECK(kernels::max_threads() >= 1);
}
