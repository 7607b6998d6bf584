#include "liesurf/frame_positive.hpp"
#include "liesurf/scenarios.hpp"
#include "liesurf/su2.hpp"

#include <benchmark/benchmark.h>

using namespace liesurf;

static void BM_IntegrateFrame(benchmark::State& state) {
  const GridDomain d = scenarios::gzbar_domain(1.0 / state.range(0));
  const FrameCoefficients f = coeffs_unimodular_closed({1, 1, 1}, scenarios::gzbar(d), RealField(d, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_frame(f, Quat::identity()));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(d.size()));
}
BENCHMARK(BM_IntegrateFrame)->Arg(25)->Arg(50)->Arg(100);

static void BM_EmbedOracle(benchmark::State& state) {
  const SurfaceSample s = scenarios::distance_sphere(0.6, 1.0 / state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(embed_oracle_forms(s, static_cast<int>(state.range(1))));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(s.domain.size()));
}
BENCHMARK(BM_EmbedOracle)->Args({25, 2})->Args({50, 2})->Args({50, 4});

static void BM_RevolutionOde(benchmark::State& state) {
  const double step = 1.0 / state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(revolution_ode(-2, 0.1, 2.0, step, 0.5, 0.05));
}
BENCHMARK(BM_RevolutionOde)->Arg(50)->Arg(100)->Arg(200);
