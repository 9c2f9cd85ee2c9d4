#include <benchmark/benchmark.h>

#include "entropia/convex_body.hpp"
#include "entropia/dynamical_systems.hpp"
#include "entropia/entropy_estimators.hpp"
#include "entropia/kernels.hpp"

namespace {

using namespace entropia;

void BM_McVolume(benchmark::State& state) {
  const StarBody ball = StarBody::ball(3, 1.0);
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) {
    const HitCount h = parallel ? mc_volume_parallel(ball, 1.0, 1, 1 << 18) : mc_volume_serial(ball, 1.0, 1, 1 << 18);
    benchmark::DoNotOptimize(h.hits);
  }
}
BENCHMARK(BM_McVolume)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_WeylMc(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  for (auto _ : state) {
    const MeanEstimate m = parallel ? weyl_mc_parallel(5, WeylRegion::Ball, 1, 1 << 20)
                                    : weyl_mc_serial(5, WeylRegion::Ball, 1, 1 << 20);
    benchmark::DoNotOptimize(m.mean);
  }
}
BENCHMARK(BM_WeylMc)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GammaCocycle(benchmark::State& state) {
  GammaOptions opts;
  opts.parallel = state.range(0) != 0;
  const DiscreteSystem sys = cat_map();
  for (auto _ : state) benchmark::DoNotOptimize(gamma_plus(sys, opts).value);
}
BENCHMARK(BM_GammaCocycle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SeparatedSets(benchmark::State& state) {
  HtopOptions opts;
  opts.parallel = state.range(0) != 0;
  opts.candidates = 5000;
  const DiscreteSystem sys = cat_map();
  for (auto _ : state) benchmark::DoNotOptimize(htop_separated(sys, {0.2}, 5, opts).estimate.value);
}
BENCHMARK(BM_SeparatedSets)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
