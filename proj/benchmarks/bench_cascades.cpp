#include <benchmark/benchmark.h>

#include "resil/cascades.hpp"
#include "resil/generate.hpp"
#include "resil/graph.hpp"
#include "resil/interdependent.hpp"

using namespace resil;

namespace {

Graph er(std::uint32_t n, double c, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::erdos_renyi;
  spec.n = n;
  spec.mean_degree = c;
  spec.seed = seed;
  return generate(spec);
}

Graph sf(std::uint32_t n) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::config_power_law;
  spec.n = n;
  spec.gamma = 2.5;
  spec.k_min = 2;
  spec.k_max = 100;
  spec.seed = 1;
  return generate(spec);
}

}  // namespace

static void BM_watts_cascade(benchmark::State& state) {
  const Graph g = er(static_cast<std::uint32_t>(state.range(0)), 3.0, 1);
  ThresholdCascadeSpec spec;
  spec.phi = 0.18;
  spec.seed_count = 1;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    spec.seed = seed++;
    benchmark::DoNotOptimize(watts_cascade(g, spec));
  }
}
BENCHMARK(BM_watts_cascade)->Arg(10000)->Arg(100000);

static void BM_motter_lai_cascade(benchmark::State& state) {
  const Graph g = sf(static_cast<std::uint32_t>(state.range(0)));
  LoadCascadeSpec spec;
  spec.alpha = 0.1;
  spec.trigger = RemovalPlan{RemovalStrategy::targeted_static_degree, 0};
  spec.trigger_fraction = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(motter_lai_cascade(g, spec));
}
BENCHMARK(BM_motter_lai_cascade)
    ->Unit(benchmark::kMillisecond)
    ->Arg(300)
    ->Arg(600);

static void BM_interdependent_cascade(benchmark::State& state) {
  const std::uint32_t n = static_cast<std::uint32_t>(state.range(0));
  const auto sys = couple(er(n, 4.0, 1), er(n, 4.0, 2),
                          CouplingMode::random_permutation, 3);
  std::uint64_t seed = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(interdependent_cascade(sys, 0.35, seed++));
}
BENCHMARK(BM_interdependent_cascade)
    ->Unit(benchmark::kMillisecond)
    ->Arg(2000)
    ->Arg(20000);

BENCHMARK_MAIN();
