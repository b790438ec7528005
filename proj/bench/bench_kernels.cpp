// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "copula_order/grid.hpp"
#include "copula_order/kernels.hpp"

using namespace copord;

namespace {

SystemSpec bench_spec(int n) {
  SystemSpec s;
  s.k = n / 2;
  s.gen = Generator::clayton(1.5);
  s.params.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) s.params[static_cast<std::size_t>(i)] = 0.5 + 0.4 * i;
  return s;
}

template <bool Parallel>
void BM_CdfGrid(benchmark::State& state) {
  const SystemSpec s = bench_spec(static_cast<int>(state.range(0)));
  const std::vector<double> xs = uniform_grid(0.01, 5.0, static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto v = Parallel ? kernels::cdf_grid_parallel(s, xs, EvalMode::Safe)
                      : kernels::cdf_grid_serial(s, xs, EvalMode::Safe);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

template <bool Parallel>
void BM_SchurGrid(benchmark::State& state) {
  const SystemSpec s = bench_spec(static_cast<int>(state.range(0)));
  const std::vector<double> xs = uniform_grid(0.01, 5.0, static_cast<int>(state.range(1)));
  for (auto _ : state) {
    auto v = Parallel ? kernels::schur_grid_parallel(s, xs, 0, 1, EvalMode::Safe)
                      : kernels::schur_grid_serial(s, xs, 0, 1, EvalMode::Safe);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

template <bool Parallel>
void BM_Sample(benchmark::State& state) {
  const SystemSpec s = bench_spec(4);
  const auto rows = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto b = Parallel ? kernels::sample_parallel(s, rows, 7) : kernels::sample_serial(s, rows, 7);
    benchmark::DoNotOptimize(b.order_stats.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_CdfGrid<false>)->Name("cdf_grid/serial")->Args({4, 4000})->Args({8, 4000});
BENCHMARK(BM_CdfGrid<true>)->Name("cdf_grid/openmp")->Args({4, 4000})->Args({8, 4000});
BENCHMARK(BM_SchurGrid<false>)->Name("schur_grid/serial")->Args({4, 2000})->Args({8, 2000});
BENCHMARK(BM_SchurGrid<true>)->Name("schur_grid/openmp")->Args({4, 2000})->Args({8, 2000});
BENCHMARK(BM_Sample<false>)->Name("sample/serial")->Arg(200000);
BENCHMARK(BM_Sample<true>)->Name("sample/openmp")->Arg(200000);

BENCHMARK_MAIN();
