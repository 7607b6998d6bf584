#include "liesurf/frame_negative.hpp"
#include "liesurf/frame_positive.hpp"
#include "liesurf/scenarios.hpp"

#include <benchmark/benchmark.h>

using namespace liesurf;

namespace {

const Mu kS3{1, 1, 1};

GridDomain gzbar_grid(benchmark::State& state) { return scenarios::gzbar_domain(1.0 / state.range(0)); }

}  // namespace

static void BM_SolveE11Node(benchmark::State& state) {
  const ConnectionCoefficients cc = christoffel(kS3);
  const ConformalJet j{{0.3, 0.2}, {0.1, -0.05}, {0.8, 0.1}, 1.5};
  for (auto _ : state) benchmark::DoNotOptimize(solve_e11_at(cc, j));
}
BENCHMARK(BM_SolveE11Node);

static void BM_SolveLinearE11(benchmark::State& state) {
  const GridDomain d = gzbar_grid(state);
  const ComplexField g = scenarios::gzbar(d);
  const RealField K(d, 1.0);
  const ConnectionCoefficients cc = christoffel(kS3);
  for (auto _ : state) benchmark::DoNotOptimize(solve_linear_e11(cc, g, K));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(d.size()));
}
BENCHMARK(BM_SolveLinearE11)->Arg(25)->Arg(50)->Arg(100);

static void BM_UnimodularClosed(benchmark::State& state) {
  const GridDomain d = gzbar_grid(state);
  const ComplexField g = scenarios::gzbar(d);
  const RealField K(d, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(coeffs_unimodular_closed(kS3, g, K));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(d.size()));
}
BENCHMARK(BM_UnimodularClosed)->Arg(25)->Arg(50)->Arg(100);

static void BM_NegativeClosed(benchmark::State& state) {
  const GridDomain d = scenarios::pseudosphere_domain(1.0 / state.range(0));
  const auto sc = scenarios::scenario_pseudosphere(d);
  const RealField K(d, -2.0);
  for (auto _ : state) benchmark::DoNotOptimize(coeffs_negative_closed(kS3, sc.g, K));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(d.size()));
}
BENCHMARK(BM_NegativeClosed)->Arg(25)->Arg(50)->Arg(100);
