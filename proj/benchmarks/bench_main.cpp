#include <benchmark/benchmark.h>

#include "rcdyn/bounds.hpp"
#include "rcdyn/dynamics.hpp"
#include "rcdyn/spectral.hpp"

using namespace rcdyn;

namespace {

Graph cycle_of(const benchmark::State& state) { return make_cycle(static_cast<std::size_t>(state.range(0))); }

void BM_SwMatrix(benchmark::State& state) {
  const Graph g = cycle_of(state);
  const ModelParams params(0.5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(sw_matrix(g, params));
  state.SetComplexityN(1 << state.range(0));
}
BENCHMARK(BM_SwMatrix)->DenseRange(4, 10, 2)->Complexity();

void BM_SbMatrix(benchmark::State& state) {
  const Graph g = cycle_of(state);
  const ModelParams params(0.5, 3);
  for (auto _ : state) benchmark::DoNotOptimize(sb_matrix(g, params));
}
BENCHMARK(BM_SbMatrix)->DenseRange(4, 10, 2);

void BM_SpectralGap(benchmark::State& state) {
  const StochasticMatrix m = sb_matrix(cycle_of(state), ModelParams(0.5, 2));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_gap(m).gap);
}
BENCHMARK(BM_SpectralGap)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_ExactMixingTime(benchmark::State& state) {
  const StochasticMatrix m = sb_matrix(cycle_of(state), ModelParams(0.5, 2));
  for (auto _ : state) benchmark::DoNotOptimize(exact_mixing_time(m).mixing_time);
}
BENCHMARK(BM_ExactMixingTime)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_SwStep(benchmark::State& state) {
  const Graph g = make_torus(static_cast<std::size_t>(state.range(0)), 2);
  const ModelParams params(0.6, 2);
  CounterRng rng(0);
  EdgeSubset a(g.num_edges());
  for (auto _ : state) {
    a = sw_step(g, params, a, rng);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_SwStep)->RangeMultiplier(2)->Range(4, 32);

void BM_Bandwidth(benchmark::State& state) {
  const Graph g = make_torus(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(bandwidth_exact(g).width);
}
BENCHMARK(BM_Bandwidth)->Arg(3);

void BM_LinearWidth(benchmark::State& state) {
  const Graph g = make_torus(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(linear_width_exact(g).width);
}
BENCHMARK(BM_LinearWidth)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
