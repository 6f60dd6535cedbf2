#include <benchmark/benchmark.h>

#include <complex>

#include "hypernorm/catalog.hpp"
#include "hypernorm/engine.hpp"
#include "hypernorm/rng.hpp"
#include "hypernorm/space.hpp"

using namespace hypernorm;

namespace {

GridFunction random_function(int n, int k, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  GridFunction f;
  f.space = DiscreteMeasureSpace::counting(n);
  f.k = k;
  std::size_t cells = 1;
  for (int i = 0; i < k; ++i) cells *= static_cast<std::size_t>(n);
  f.values.reserve(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    f.values.push_back(rng.complex_gaussian());
  }
  return f;
}

void bench_integrate(benchmark::State& state, const HypergraphPair& h,
                     EvalPath path) {
  const int n = static_cast<int>(state.range(0));
  const GridFunction f = random_function(n, h.k, 7);
  EvalOptions opts;
  opts.path = path;
  opts.budget_terms = 1e12;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(h, f, opts));
  }
}

void gowers2_brute(benchmark::State& state) {
  bench_integrate(state, make_gowers(2), EvalPath::Brute);
}
void gowers2_planned(benchmark::State& state) {
  bench_integrate(state, make_gowers(2), EvalPath::Planned);
}
void gowers3_brute(benchmark::State& state) {
  bench_integrate(state, make_gowers(3), EvalPath::Brute);
}
void gowers3_planned(benchmark::State& state) {
  bench_integrate(state, make_gowers(3), EvalPath::Planned);
}
void schatten4_planned(benchmark::State& state) {
  bench_integrate(state, make_schatten(4), EvalPath::Planned);
}
void schatten6_planned(benchmark::State& state) {
  bench_integrate(state, make_schatten(6), EvalPath::Planned);
}

void plan_only(benchmark::State& state) {
  const HypergraphPair h = make_gowers(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(plan_contraction(h, 8));
  }
}

}  // namespace

BENCHMARK(gowers2_brute)->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(gowers2_planned)->Arg(4)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(gowers3_brute)->Arg(2)->Arg(4);
BENCHMARK(gowers3_planned)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(schatten4_planned)->Arg(8)->Arg(16);
BENCHMARK(schatten6_planned)->Arg(8)->Arg(16);
BENCHMARK(plan_only)->Arg(2)->Arg(3)->Arg(4);

BENCHMARK_MAIN();
