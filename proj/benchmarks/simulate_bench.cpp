#include <benchmark/benchmark.h>

#include "maxstable/simulate.hpp"

namespace {

using namespace maxstable;

void BM_SimulateLine(benchmark::State& state, ModelKind kind) {
  const ModelSpec spec{kind, 1, calibrate_sigma(kind, 1.7)};
  const GridSpec grid = GridSpec::line(static_cast<std::size_t>(state.range(0)));
  Rng rng = make_rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_max_stable(spec, grid, rng));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_SimulateLine, brown_resnick, ModelKind::BrownResnick)->Arg(100)->Arg(1000)->Arg(2141);
BENCHMARK_CAPTURE(BM_SimulateLine, smith, ModelKind::Smith)->Arg(100)->Arg(1000)->Arg(2141);
BENCHMARK_CAPTURE(BM_SimulateLine, extremal_gaussian, ModelKind::ExtremalGaussian)->Arg(100)->Arg(1000);

void BM_SimulateField(benchmark::State& state) {
  const ModelSpec spec{ModelKind::BrownResnick, 2, 1.0};
  const GridSpec grid = GridSpec::square(static_cast<std::size_t>(state.range(0)));
  Rng rng = make_rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_max_stable(spec, grid, rng));
}
BENCHMARK(BM_SimulateField)->Arg(10)->Arg(20);

}  // namespace
