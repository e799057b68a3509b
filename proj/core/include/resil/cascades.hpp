#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "resil/generate.hpp"
#include "resil/graph.hpp"
#include "resil/percolation.hpp"

namespace resil {

struct ThresholdCascadeSpec {
  double phi = 0.5;
  std::uint32_t seed_count = 1;
  std::uint64_t seed = 0;

  void validate(NodeId n) const;
};

struct CascadeResult {
  std::vector<NodeId> failed;
  double survivor_fraction = 1.0;
  std::vector<std::uint32_t> rounds;
  std::vector<double> survivor_by_round;
  std::uint32_t initial_failures = 0;
};

// Synchronous fractional-threshold contagion. A live node of original degree
// d >= 1 fails once failed_neighbors / d >= phi; isolated nodes never fail.
CascadeResult watts_cascade(const Graph& g, const ThresholdCascadeSpec& spec);

// Same dynamics from an explicit seed set.
CascadeResult watts_cascade_from(const Graph& g, double phi,
                                 const std::vector<NodeId>& seeds);

struct LoadCascadeSpec {
  double alpha = 0.0;
  RemovalPlan trigger;
  double trigger_fraction = 0.0;

  void validate() const;
};

// Shortest-path load cascade: load = betweenness plus an endpoint credit of
// (component size - 1), capacity = (1 + alpha) * initial load. After the
// trigger removal, loads are recomputed on the survivor graph and overloaded
// nodes fail until a fixed point. Weighted graphs route flow along paths of
// length 1/weight, with weights frozen before the trigger.
CascadeResult motter_lai_cascade(const Graph& g, const LoadCascadeSpec& spec);

// Same cascade from an explicit trigger set.
CascadeResult motter_lai_cascade_from(const Graph& g, double alpha,
                                      const std::vector<NodeId>& trigger);

// Node loads as used by the cascade: betweenness + endpoint credit.
std::vector<double> cascade_loads(const Graph& g);

// Copy of g where edge {i,j} weighs (k_i * k_j)^beta; beta = 0 gives weight 1.
Graph assign_degree_weights(const Graph& g, double beta);

struct WeightedFlowSpec {
  double beta = 0.0;
  double rho = 0.0;
  std::uint32_t pair_samples = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

// Mean two-terminal conductance after beta-weighting, over pair_samples
// endpoint pairs drawn with node weight proportional to k^rho (s != t).
double mean_conductance(const Graph& g, const WeightedFlowSpec& spec);

struct BetaSweepCell {
  double beta = 0.0;
  double f = 0.0;
  double rounds_mean = 0.0;
  double secondary_mean = 0.0;
  double failed_mean = 0.0;
  double survivor_mean = 0.0;
  double survivor_std = 0.0;
  std::uint32_t replicates = 0;
};

struct BetaSweepResult {
  std::vector<BetaSweepCell> cells;
};

// For each beta: weight edges, set capacities from the weighted loads, trigger
// a highest-degree removal of fraction f, run the load cascade, record G'/G.
BetaSweepResult weighted_cascade_sweep(const GeneratorSpec& spec,
                                       const std::vector<double>& beta_grid,
                                       const std::vector<double>& f_grid,
                                       double alpha, std::uint32_t replicates,
                                       std::uint64_t seed, unsigned jobs = 1);

enum class PropagationModel : std::uint8_t { fraction_threshold, any_one_neighbor };
enum class RiskTopology : std::uint8_t { tree, clique };

std::string to_string(PropagationModel m);
std::string to_string(RiskTopology t);
PropagationModel propagation_model_from_string(const std::string& name);
RiskTopology risk_topology_from_string(const std::string& name);

// The two fixed comparison topologies: a k-ary tree on n nodes, or n/(k+1)
// disjoint (k+1)-cliques.
Graph risk_topology_graph(RiskTopology topology, NodeId n, std::uint32_t k);

// Mean eventual-failure probability of a node when every node independently
// fails upfront with probability p0 and failures then propagate.
double topology_risk_exact(PropagationModel model, RiskTopology topology,
                           NodeId n, std::uint32_t k, double p0,
                           double phi = 0.5);
double topology_risk_mc(PropagationModel model, RiskTopology topology,
                        NodeId n, std::uint32_t k, double p0,
                        std::uint64_t trials, std::uint64_t seed,
                        double phi = 0.5);

// Exact enumeration when n <= 12, Monte-Carlo otherwise.
double topology_risk_compare(PropagationModel model, RiskTopology topology,
                             NodeId n, std::uint32_t k, double p0,
                             std::uint64_t trials, std::uint64_t seed,
                             double phi = 0.5);

void write_cascade_trace_csv(std::ostream& out, const CascadeResult& result);
void write_beta_sweep_csv(std::ostream& out, const BetaSweepResult& result);

}  // namespace resil
