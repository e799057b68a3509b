#include <benchmark/benchmark.h>

#include <vector>

#include "resil/truth.hpp"

using namespace resil;

namespace {

SourceClaimNetwork make_net(std::uint32_t sources, std::uint32_t claims) {
  std::vector<double> a(sources), b(sources);
  for (std::uint32_t i = 0; i < sources; ++i) {
    a[i] = 0.5 + 0.4 * i / (sources - 1);
    b[i] = 0.05 + 0.2 * i / (sources - 1);
  }
  return synth_generate(sources, claims, a, b, 0.5, 7).net;
}

}  // namespace

static void BM_em_estimate(benchmark::State& state) {
  const auto net = make_net(static_cast<std::uint32_t>(state.range(0)),
                            static_cast<std::uint32_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(em_estimate(net));
}
BENCHMARK(BM_em_estimate)
    ->Unit(benchmark::kMillisecond)
    ->Args({20, 500})
    ->Args({30, 1000});

static void BM_confidence_intervals(benchmark::State& state) {
  const auto net = make_net(30, 1000);
  const auto est = em_estimate(net);
  for (auto _ : state)
    benchmark::DoNotOptimize(confidence_intervals(est, net, 0.95));
}
BENCHMARK(BM_confidence_intervals)->Unit(benchmark::kMillisecond);

static void BM_iterative_rank(benchmark::State& state) {
  const auto net = make_net(50, 2000);
  for (auto _ : state) benchmark::DoNotOptimize(iterative_rank(net));
}
BENCHMARK(BM_iterative_rank)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
