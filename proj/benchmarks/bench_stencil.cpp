#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "wavebound/analysis.hpp"
#include "wavebound/solver.hpp"

using namespace wavebound;

namespace {

GridSpec grid_for(std::size_t n) {
  return init_grid(InitialData(DataKind::odd_velocity), profiles::constant(1.0), 10.0, 0.9, n);
}

}  // namespace

static void BM_LeapfrogUpdate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> prev(n, 0.5), curr(n, 1.0), next(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(leapfrog_update(prev, curr, next, 0.81));
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(n));
}
BENCHMARK(BM_LeapfrogUpdate)->RangeMultiplier(4)->Range(1 << 10, 1 << 20);

static void BM_Advance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0)) + 1;
  const auto profile = profiles::example1();
  const InitialData data(DataKind::derivative_velocity);
  const auto grid = init_grid(data, profile, 10.0, 0.9, n);
  auto s = first_step(data, profile, grid);
  std::vector<double> scratch;
  for (auto _ : state) advance(s, profile, grid, scratch);
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(n));
}
BENCHMARK(BM_Advance)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

static void BM_Diagnose(benchmark::State& state) {
  const auto grid = grid_for(static_cast<std::size_t>(state.range(0)) + 1);
  const InitialData data(DataKind::odd_velocity);
  const auto u = data.sample_u1(grid);
  const auto u_t = data.sample_u1(grid);
  const SpeedSample c{1.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(diagnose(1.0, 1, u, u_t, c, grid));
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(grid.n_points));
}
BENCHMARK(BM_Diagnose)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

BENCHMARK_MAIN();
