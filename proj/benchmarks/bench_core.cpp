#include <benchmark/benchmark.h>

#include "simplexforge/knasteropt.hpp"
#include "simplexforge/rng.hpp"
#include "simplexforge/rotation.hpp"
#include "simplexforge/tracepoly.hpp"
#include "simplexforge/whsic.hpp"

using namespace simplexforge;

static void BM_GellMannBasis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(GellMannBasis(n));
}
BENCHMARK(BM_GellMannBasis)->Arg(3)->Arg(4)->Arg(8);

static void BM_FCubic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const StructureTensor t = structure_tensor(GellMannBasis(n));
  CounterRng rng(1);
  const BlochVector v(n, random_unit_vector(n * n - 1, rng));
  for (auto _ : state) benchmark::DoNotOptimize(f_cubic(v, t));
}
BENCHMARK(BM_FCubic)->Arg(3)->Arg(4)->Arg(6);

static void BM_Expm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  CounterRng rng(2);
  RealVector p(skew_dim(n));
  for (int i = 0; i < p.size(); ++i) p[i] = 0.1 * rng.normal();
  const RealMatrix a = skew_from_params(p, n);
  for (auto _ : state) benchmark::DoNotOptimize(expm(a));
}
BENCHMARK(BM_Expm)->Arg(8)->Arg(15);

static void BM_OptimizeQutrit(benchmark::State& state) {
  const ObjectiveContext ctx(3);
  const RotationState start =
      rotation_from_vertices(ctx, seed_sic(3).bloch_vertices);
  OptimizerConfig cfg;
  cfg.f0 = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(optimize(start, ctx, cfg));
}
BENCHMARK(BM_OptimizeQutrit)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
