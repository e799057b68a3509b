#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "resil/generate.hpp"
#include "resil/graph.hpp"
#include "resil/metrics.hpp"

namespace resil {

enum class RemovalStrategy : std::uint8_t {
  random,
  targeted_static_degree,
  targeted_adaptive_degree,
};

std::string to_string(RemovalStrategy s);
RemovalStrategy removal_strategy_from_string(const std::string& name);

struct RemovalPlan {
  RemovalStrategy strategy = RemovalStrategy::random;
  std::uint64_t seed = 0;
};

// Full removal priority over the present nodes of g. Prefixes of this order
// give the nested removal sets used across an f-sweep.
std::vector<NodeId> removal_order(const Graph& g, const RemovalPlan& plan);

// Removes the first floor(f * present_count) nodes of the plan's order.
Graph apply_removal(const Graph& g, const RemovalPlan& plan, double f);

struct PercolationPoint {
  double f = 0.0;
  double S_mean = 0.0;
  double S_std = 0.0;
  double L_mean = 0.0;
  std::uint32_t replicates = 0;
};

struct PercolationCurve {
  std::vector<PercolationPoint> points;
};

struct SweepOptions {
  bool compute_path_length = true;
  std::uint64_t path_pair_budget = kDefaultPathPairBudget;
  unsigned jobs = 1;
};

// One replicate: generate a graph from spec (reseeded per replicate), walk the
// f grid along nested prefixes of one removal order. S is the giant component
// fraction relative to the intact replicate's node count.
PercolationCurve percolation_sweep(const GeneratorSpec& spec,
                                   const RemovalPlan& plan,
                                   const std::vector<double>& f_grid,
                                   std::uint32_t replicates,
                                   std::uint64_t master_seed,
                                   const SweepOptions& options = {});

// Same sweep over a fixed graph (no generator), removal reseeded per replicate.
PercolationCurve percolation_sweep_graph(const Graph& g,
                                         const RemovalPlan& plan,
                                         const std::vector<double>& f_grid,
                                         std::uint32_t replicates,
                                         std::uint64_t master_seed,
                                         const SweepOptions& options = {});

// First grid f where S_mean drops below cutoff, linearly interpolated between
// the straddling grid points. Empty if the curve never crosses.
std::optional<double> empirical_threshold(const PercolationCurve& curve,
                                          double cutoff);

void write_percolation_csv(std::ostream& out, const PercolationCurve& curve);

}  // namespace resil
