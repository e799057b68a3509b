#include <benchmark/benchmark.h>

#include "resil/generate.hpp"
#include "resil/graph.hpp"
#include "resil/metrics.hpp"
#include "resil/percolation.hpp"

using namespace resil;

namespace {

Graph er(std::uint32_t n, double c) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::erdos_renyi;
  spec.n = n;
  spec.mean_degree = c;
  spec.seed = 1;
  return generate(spec);
}

Graph pa(std::uint32_t n, std::uint32_t m) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::preferential_attachment;
  spec.n = n;
  spec.attach_m = m;
  spec.seed = 1;
  return generate(spec);
}

}  // namespace

static void BM_giant_component(benchmark::State& state) {
  const Graph g = er(static_cast<std::uint32_t>(state.range(0)), 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(giant_component(g));
}
BENCHMARK(BM_giant_component)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_betweenness(benchmark::State& state) {
  const Graph g = er(static_cast<std::uint32_t>(state.range(0)), 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(betweenness(g));
}
BENCHMARK(BM_betweenness)->Unit(benchmark::kMillisecond)->Arg(200)->Arg(400)->Arg(800);

static void BM_betweenness_weighted(benchmark::State& state) {
  const Graph g = pa(static_cast<std::uint32_t>(state.range(0)), 2);
  std::vector<double> length(g.edge_count());
  for (std::size_t e = 0; e < length.size(); ++e) {
    const auto [u, v] = g.edge(e);
    length[e] = static_cast<double>(g.degree(u) * g.degree(v));
  }
  for (auto _ : state) benchmark::DoNotOptimize(betweenness_weighted(g, length));
}
BENCHMARK(BM_betweenness_weighted)
    ->Unit(benchmark::kMillisecond)
    ->Arg(200)
    ->Arg(400);

static void BM_percolation_sweep(benchmark::State& state) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::erdos_renyi;
  spec.n = static_cast<std::uint32_t>(state.range(0));
  spec.mean_degree = 4.0;
  RemovalPlan plan{RemovalStrategy::random, 0};
  std::vector<double> grid;
  for (int i = 0; i <= 9; ++i) grid.push_back(i / 10.0);
  SweepOptions opt;
  opt.compute_path_length = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(percolation_sweep(spec, plan, grid, 5, 1, opt));
}
BENCHMARK(BM_percolation_sweep)
    ->Unit(benchmark::kMillisecond)
    ->Arg(1000)
    ->Arg(10000);

BENCHMARK_MAIN();
