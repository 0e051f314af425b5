#include <benchmark/benchmark.h>

#include "recurlab/corners.hpp"
#include "recurlab/dynamics.hpp"
#include "recurlab/rng.hpp"
#include "recurlab/spaces.hpp"
#include "recurlab/verify.hpp"

using namespace recurlab;
using namespace recurlab::dynamics;

static void BM_CornerScan(benchmark::State& state) {
  long long side = state.range(0);
  auto b = corners::behrend_set(3 * side);
  auto a = corners::lift_ap3_to_corner_free(b, side);
  for (auto _ : state) benchmark::DoNotOptimize(corners::contains_corner(a));
  state.SetComplexityN(side);
}
BENCHMARK(BM_CornerScan)->Arg(27)->Arg(81)->Arg(243)->Unit(benchmark::kMillisecond);

static void BM_BranchAndBound(benchmark::State& state) {
  long long side = state.range(0);
  for (auto _ : state)
    benchmark::DoNotOptimize(corners::max_corner_free_bnb(side, 10'000'000));
}
BENCHMARK(BM_BranchAndBound)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_CoveringArcs(benchmark::State& state) {
  spaces::Space t = spaces::Space::torus();
  spaces::Region r = spaces::Region::arcs(
      {{Rational(0), Rational(1, 4)}, {Rational(1, 2), Rational(5, 8)}});
  Rational eps(1, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spaces::covering_number(r, t, eps));
}
BENCHMARK(BM_CoveringArcs)->Arg(16)->Arg(256)->Arg(4096);

static void BM_OrbitRotation(benchmark::State& state) {
  Map rot = Map::rotation(RotationAngle::golden(1ll << 20));
  spaces::Point x{Rational(0)};
  for (auto _ : state)
    benchmark::DoNotOptimize(orbit_distances(rot, x, state.range(0)));
}
BENCHMARK(BM_OrbitRotation)->Arg(50)->Arg(400);

static void BM_WeightedReturnTail(benchmark::State& state) {
  RotationAngle a = RotationAngle::golden(1ll << 31);
  for (auto _ : state)
    benchmark::DoNotOptimize(rotation_min_weighted_return(a, 100, state.range(0)));
}
BENCHMARK(BM_WeightedReturnTail)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

static void BM_McThroughput(benchmark::State& state) {
  long long n = state.range(0);
  for (auto _ : state) {
    double v = mc_mean(n, 12345, 1, [](Rng& r, long long) { return r.coord_pow2(20).value(); });
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_McThroughput)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_NonReturningFinite(benchmark::State& state) {
  spaces::Space sp = spaces::Space::cyclic(60);
  spaces::Region y = spaces::Region::whole();
  Map shift = Map::cyclic_shift(60, 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(verify::non_returning_single(y, shift, state.range(0)));
}
BENCHMARK(BM_NonReturningFinite)->Arg(2)->Arg(8);

BENCHMARK_MAIN();
