#include <benchmark/benchmark.h>

#include "hypernorm/catalog.hpp"
#include "hypernorm/inequalities.hpp"
#include "hypernorm/pair.hpp"

using namespace hypernorm;

namespace {

// Restart throughput on a satisfying pair (no early exit distorts timing).
void search_restarts_u2(benchmark::State& state) {
  const HypergraphPair h = make_gowers(2);
  TrialConfig cfg;
  cfg.trials = static_cast<int>(state.range(0));
  cfg.seed = 7;
  cfg.omega_size = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_triangle_violation(h, cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.trials);
}

// Time to first certified witness on a violating pair.
void search_find_doubled_u2(benchmark::State& state) {
  const HypergraphPair h = scale(make_gowers(2), 2.0);
  TrialConfig cfg;
  cfg.trials = 1000;
  cfg.seed = 7;
  cfg.omega_size = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(search_triangle_violation(h, cfg));
  }
}

void verify_throughput_factor_equality(benchmark::State& state) {
  const HypergraphPair h = make_gowers(2);
  TrialConfig cfg;
  cfg.trials = static_cast<int>(state.range(0));
  cfg.seed = 7;
  cfg.omega_size = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_factor_equality(h, cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.trials);
}

}  // namespace

BENCHMARK(search_restarts_u2)->Arg(16)->Arg(64);
BENCHMARK(search_find_doubled_u2);
BENCHMARK(verify_throughput_factor_equality)->Arg(100);
