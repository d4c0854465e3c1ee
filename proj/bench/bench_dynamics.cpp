#include <benchmark/benchmark.h>

#include <random>

#include "ttid/dynamics/dynamics.hpp"

using namespace ttid;

namespace {

const Jet2 X = Jet2::var_x(), Y = Jet2::var_y(), ONE = Jet2::constant(FieldElement(1));

NumericMap leau_product() {
  return NumericMap::compile(Diffeo::rational(X, ONE - X, Y, ONE - Y));
}

std::vector<Point2> starts(size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-0.1, -0.01);
  std::vector<Point2> s(n);
  for (auto& p : s) p = {cplx(u(rng), 0.01 * u(rng)), cplx(u(rng), 0.01 * u(rng))};
  return s;
}

void orbit_batch(benchmark::State& state, bool parallel) {
  NumericMap F = leau_product();
  auto s = starts(static_cast<size_t>(state.range(0)));
  for (auto _ : state) {
    auto orbits = iterate_batch(F, s, 2000, {}, parallel);
    benchmark::DoNotOptimize(orbits.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2000);
}

void BM_OrbitBatchSerial(benchmark::State& state) { orbit_batch(state, false); }
void BM_OrbitBatchParallel(benchmark::State& state) { orbit_batch(state, true); }

void vivas(benchmark::State& state, bool parallel) {
  NumericMap F = NumericMap::compile(curated_vivas_map());
  VivasDomain dom;
  VivasOptions opts;
  opts.samples = static_cast<int>(state.range(0));
  opts.parallel = parallel;
  for (auto _ : state) {
    VivasReport r = vivas_checks(F, dom, opts);
    benchmark::DoNotOptimize(r.invariant);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_VivasSerial(benchmark::State& state) { vivas(state, false); }
void BM_VivasParallel(benchmark::State& state) { vivas(state, true); }

}  // namespace

BENCHMARK(BM_OrbitBatchSerial)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_OrbitBatchParallel)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_VivasSerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_VivasParallel)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
