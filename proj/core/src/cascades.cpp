#include "resil/cascades.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

#include "resil/conductance.hpp"
#include "resil/metrics.hpp"
#include "resil/parallel.hpp"
#include "resil/rng.hpp"

namespace resil {

void ThresholdCascadeSpec::validate(NodeId n) const {
  if (!(phi > 0.0 && phi <= 1.0))
    throw std::invalid_argument("threshold.phi: must be in (0, 1]");
  if (seed_count == 0)
    throw std::invalid_argument("threshold.seed_count: must be >= 1");
  if (seed_count > n)
    throw std::invalid_argument("threshold.seed_count: exceeds node count");
}

void LoadCascadeSpec::validate() const {
  if (!(alpha >= 0.0)) throw std::invalid_argument("load.alpha: must be >= 0");
  if (!(trigger_fraction >= 0.0 && trigger_fraction <= 1.0))
    throw std::invalid_argument("load.trigger_fraction: must be in [0, 1]");
}

void WeightedFlowSpec::validate() const {
  if (pair_samples == 0)
    throw std::invalid_argument("flow.pair_samples: must be >= 1");
}

namespace {

double giant_fraction_after(const Graph& g, const std::vector<NodeId>& removed,
                            double giant0) {
  const Graph live = g.without_nodes(removed);
  return static_cast<double>(giant_component_size(live)) / giant0;
}

}  // namespace

CascadeResult watts_cascade_from(const Graph& g, double phi,
                                 const std::vector<NodeId>& seeds) {
  if (!(phi > 0.0 && phi <= 1.0))
    throw std::invalid_argument("threshold.phi: must be in (0, 1]");
  const NodeId n = g.node_count();
  std::vector<char> failed(n, 0);
  for (NodeId u : seeds) {
    if (u >= n || !g.present(u))
      throw std::invalid_argument("cascade seed is not a present node");
    if (failed[u]) throw std::invalid_argument("duplicate cascade seed");
    failed[u] = 1;
  }

  const double giant0 = static_cast<double>(giant_component_size(g));
  if (giant0 == 0.0) throw std::invalid_argument("cascade requires a non-empty graph");

  CascadeResult result;
  result.initial_failures = static_cast<std::uint32_t>(seeds.size());
  result.failed = seeds;

  std::vector<std::uint32_t> fail_count(n, 0);
  std::vector<NodeId> frontier = seeds;
  result.survivor_by_round.push_back(
      giant_fraction_after(g, result.failed, giant0));

  std::vector<NodeId> touched;
  std::vector<char> queued(n, 0);
  while (!frontier.empty()) {
    touched.clear();
    for (NodeId u : frontier) {
      for (const Graph::Adj& a : g.neighbors(u)) {
        if (failed[a.to]) continue;
        ++fail_count[a.to];
        if (!queued[a.to]) {
          queued[a.to] = 1;
          touched.push_back(a.to);
        }
      }
    }
    std::vector<NodeId> next;
    for (NodeId v : touched) {
      queued[v] = 0;
      const std::size_t d = g.degree(v);
      if (d >= 1 && static_cast<double>(fail_count[v]) / static_cast<double>(d) >= phi)
        next.push_back(v);
    }
    if (next.empty()) break;
    for (NodeId v : next) failed[v] = 1;
    result.failed.insert(result.failed.end(), next.begin(), next.end());
    result.rounds.push_back(static_cast<std::uint32_t>(next.size()));
    result.survivor_by_round.push_back(
        giant_fraction_after(g, result.failed, giant0));
    frontier = std::move(next);
  }

  std::sort(result.failed.begin(), result.failed.end());
  result.survivor_fraction = result.survivor_by_round.back();
  return result;
}

CascadeResult watts_cascade(const Graph& g, const ThresholdCascadeSpec& spec) {
  spec.validate(static_cast<NodeId>(g.present_count()));
  Rng rng(derive_seed(spec.seed, seed_tag::cascade));
  const std::vector<NodeId> present = g.present_nodes();
  std::vector<NodeId> seeds;
  seeds.reserve(spec.seed_count);
  for (std::size_t i : rng.sample(present.size(), spec.seed_count))
    seeds.push_back(present[i]);
  return watts_cascade_from(g, spec.phi, seeds);
}

std::vector<double> cascade_loads(const Graph& g) {
  bool all_unit = true;
  if (g.weighted()) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (g.weight(e) != 1.0) {
        all_unit = false;
        break;
      }
    }
  }
  std::vector<double> loads;
  if (all_unit) {
    loads = betweenness(g);
  } else {
    std::vector<double> length(g.edge_count(), 1.0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) length[e] = 1.0 / g.weight(e);
    loads = betweenness_weighted(g, length);
  }
  const Components comps = connected_components(g);
  for (NodeId u : g.present_nodes())
    loads[u] += static_cast<double>(comps.size[comps.label[u]] - 1);
  return loads;
}

namespace {

// Overload iteration shared by the plain cascade and the beta sweep; capacity
// is indexed by node id and fixed before the trigger.
CascadeResult run_load_cascade(const Graph& g,
                               const std::vector<double>& capacity,
                               const std::vector<NodeId>& trigger) {
  const double giant0 = static_cast<double>(giant_component_size(g));
  if (giant0 == 0.0) throw std::invalid_argument("cascade requires a non-empty graph");

  CascadeResult result;
  result.initial_failures = static_cast<std::uint32_t>(trigger.size());
  result.failed = trigger;
  result.survivor_by_round.push_back(
      giant_fraction_after(g, result.failed, giant0));

  Graph live = g.without_nodes(trigger);
  while (true) {
    const std::vector<double> loads = cascade_loads(live);
    std::vector<NodeId> over;
    for (NodeId u : live.present_nodes())
      if (loads[u] > capacity[u]) over.push_back(u);
    if (over.empty()) break;
    live = live.without_nodes(over);
    result.failed.insert(result.failed.end(), over.begin(), over.end());
    result.rounds.push_back(static_cast<std::uint32_t>(over.size()));
    result.survivor_by_round.push_back(
        static_cast<double>(giant_component_size(live)) / giant0);
  }

  std::sort(result.failed.begin(), result.failed.end());
  result.survivor_fraction = result.survivor_by_round.back();
  return result;
}

}  // namespace

CascadeResult motter_lai_cascade_from(const Graph& g, double alpha,
                                      const std::vector<NodeId>& trigger) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("load.alpha: must be >= 0");
  std::unordered_set<NodeId> seen;
  for (NodeId u : trigger) {
    if (u >= g.node_count() || !g.present(u))
      throw std::invalid_argument("cascade trigger is not a present node");
    if (!seen.insert(u).second)
      throw std::invalid_argument("duplicate cascade trigger node");
  }
  std::vector<double> capacity = cascade_loads(g);
  for (double& c : capacity) c *= 1.0 + alpha;
  return run_load_cascade(g, capacity, trigger);
}

CascadeResult motter_lai_cascade(const Graph& g, const LoadCascadeSpec& spec) {
  spec.validate();
  const std::vector<NodeId> order = removal_order(g, spec.trigger);
  auto k = static_cast<std::size_t>(
      std::floor(spec.trigger_fraction * static_cast<double>(g.present_count())));
  k = std::min(k, order.size());
  return motter_lai_cascade_from(
      g, spec.alpha, {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k)});
}

Graph assign_degree_weights(const Graph& g, double beta) {
  std::vector<double> weights(g.edge_count(), 1.0);
  if (beta != 0.0) {
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto [u, v] = g.edge(e);
      weights[e] = std::pow(
          static_cast<double>(g.degree(u)) * static_cast<double>(g.degree(v)), beta);
    }
  }
  return g.with_weights(weights);
}

double mean_conductance(const Graph& g, const WeightedFlowSpec& spec) {
  spec.validate();
  const std::vector<NodeId> present = g.present_nodes();
  if (present.size() < 2)
    throw std::invalid_argument("mean_conductance requires at least two nodes");
  const Components comps = connected_components(g);
  if (comps.size.size() != 1)
    throw std::invalid_argument("mean_conductance requires a connected graph");

  const Graph wg = assign_degree_weights(g, spec.beta);
  std::vector<double> node_weight(present.size(), 1.0);
  if (spec.rho != 0.0) {
    for (std::size_t i = 0; i < present.size(); ++i)
      node_weight[i] = std::pow(static_cast<double>(g.degree(present[i])), spec.rho);
  }
  DiscreteSampler sampler(node_weight);
  Rng rng(derive_seed(spec.seed, seed_tag::sampling));

  double sum = 0.0;
  for (std::uint32_t i = 0; i < spec.pair_samples; ++i) {
    const NodeId s = present[sampler.draw(rng)];
    NodeId t = s;
    while (t == s) t = present[sampler.draw(rng)];
    sum += effective_conductance(wg, s, t);
  }
  return sum / static_cast<double>(spec.pair_samples);
}

BetaSweepResult weighted_cascade_sweep(const GeneratorSpec& spec,
                                       const std::vector<double>& beta_grid,
                                       const std::vector<double>& f_grid,
                                       double alpha, std::uint32_t replicates,
                                       std::uint64_t seed, unsigned jobs) {
  spec.validate();
  if (beta_grid.empty()) throw std::invalid_argument("beta_grid must be non-empty");
  if (f_grid.empty()) throw std::invalid_argument("f_grid must be non-empty");
  for (double f : f_grid)
    if (!(f >= 0.0 && f <= 1.0))
      throw std::invalid_argument("f_grid values must be in [0, 1]");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (replicates == 0) throw std::invalid_argument("replicates must be >= 1");

  struct CellSample {
    double survivor = 0.0;
    double rounds = 0.0;
    double secondary = 0.0;
    double failed = 0.0;
  };
  const std::size_t cells = beta_grid.size() * f_grid.size();
  std::vector<std::vector<CellSample>> samples(replicates,
                                               std::vector<CellSample>(cells));

  parallel_for_index(replicates, jobs, [&](std::size_t r) {
    const std::uint64_t rep = seed ^ static_cast<std::uint64_t>(r);
    const Graph base = generate(spec.with_seed(rep));
    RemovalPlan plan{RemovalStrategy::targeted_static_degree, rep};
    const std::vector<NodeId> order = removal_order(base, plan);
    const auto n = static_cast<double>(base.present_count());
    for (std::size_t bi = 0; bi < beta_grid.size(); ++bi) {
      const Graph wg = assign_degree_weights(base, beta_grid[bi]);
      std::vector<double> capacity = cascade_loads(wg);
      for (double& c : capacity) c *= 1.0 + alpha;
      for (std::size_t fi = 0; fi < f_grid.size(); ++fi) {
        auto k = static_cast<std::size_t>(std::floor(f_grid[fi] * n));
        k = std::min(k, order.size());
        const CascadeResult res = run_load_cascade(
            wg, capacity,
            {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k)});
        CellSample& cell = samples[r][bi * f_grid.size() + fi];
        cell.survivor = res.survivor_fraction;
        cell.rounds = static_cast<double>(res.rounds.size());
        cell.secondary = static_cast<double>(res.failed.size() - res.initial_failures);
        cell.failed = static_cast<double>(res.failed.size());
      }
    }
  });

  BetaSweepResult result;
  result.cells.resize(cells);
  for (std::size_t bi = 0; bi < beta_grid.size(); ++bi) {
    for (std::size_t fi = 0; fi < f_grid.size(); ++fi) {
      const std::size_t c = bi * f_grid.size() + fi;
      BetaSweepCell& cell = result.cells[c];
      cell.beta = beta_grid[bi];
      cell.f = f_grid[fi];
      cell.replicates = replicates;
      double s = 0.0;
      for (std::uint32_t r = 0; r < replicates; ++r) {
        const CellSample& x = samples[r][c];
        s += x.survivor;
        cell.rounds_mean += x.rounds;
        cell.secondary_mean += x.secondary;
        cell.failed_mean += x.failed;
      }
      cell.survivor_mean = s / replicates;
      cell.rounds_mean /= replicates;
      cell.secondary_mean /= replicates;
      cell.failed_mean /= replicates;
      double ss = 0.0;
      for (std::uint32_t r = 0; r < replicates; ++r) {
        const double d = samples[r][c].survivor - cell.survivor_mean;
        ss += d * d;
      }
      cell.survivor_std = replicates > 1 ? std::sqrt(ss / (replicates - 1)) : 0.0;
    }
  }
  return result;
}

std::string to_string(PropagationModel m) {
  switch (m) {
    case PropagationModel::fraction_threshold: return "fraction_threshold";
    case PropagationModel::any_one_neighbor: return "any_one_neighbor";
  }
  throw std::logic_error("unknown propagation model");
}

std::string to_string(RiskTopology t) {
  switch (t) {
    case RiskTopology::tree: return "tree";
    case RiskTopology::clique: return "clique";
  }
  throw std::logic_error("unknown risk topology");
}

PropagationModel propagation_model_from_string(const std::string& name) {
  if (name == "fraction_threshold") return PropagationModel::fraction_threshold;
  if (name == "any_one_neighbor") return PropagationModel::any_one_neighbor;
  throw std::invalid_argument("unknown propagation model: " + name);
}

RiskTopology risk_topology_from_string(const std::string& name) {
  if (name == "tree") return RiskTopology::tree;
  if (name == "clique") return RiskTopology::clique;
  throw std::invalid_argument("unknown risk topology: " + name);
}

Graph risk_topology_graph(RiskTopology topology, NodeId n, std::uint32_t k) {
  if (n == 0) throw std::invalid_argument("risk topology needs at least one node");
  if (k == 0) throw std::invalid_argument("edges_per_node must be >= 1");
  Graph g(n);
  switch (topology) {
    case RiskTopology::tree:
      for (NodeId i = 1; i < n; ++i) g.add_edge(i, (i - 1) / k);
      return g;
    case RiskTopology::clique: {
      const NodeId group = k + 1;
      if (n % group != 0)
        throw std::invalid_argument("clique topology needs n divisible by k + 1");
      for (NodeId base = 0; base < n; base += group)
        for (NodeId i = base; i < base + group; ++i)
          for (NodeId j = i + 1; j < base + group; ++j) g.add_edge(i, j);
      return g;
    }
  }
  throw std::logic_error("unknown risk topology");
}

namespace {

std::size_t propagate_failures(const Graph& g, PropagationModel model,
                               double phi, const std::vector<NodeId>& seeds) {
  if (seeds.empty()) return 0;
  if (model == PropagationModel::fraction_threshold)
    return watts_cascade_from(g, phi, seeds).failed.size();
  // Any failed neighbor is fatal: failure floods whole components.
  std::vector<char> failed(g.node_count(), 0);
  std::vector<NodeId> stack = seeds;
  for (NodeId u : seeds) failed[u] = 1;
  std::size_t count = seeds.size();
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (const Graph::Adj& a : g.neighbors(u)) {
      if (failed[a.to]) continue;
      failed[a.to] = 1;
      ++count;
      stack.push_back(a.to);
    }
  }
  return count;
}

void check_risk_params(PropagationModel model, double p0, double phi) {
  if (!(p0 >= 0.0 && p0 <= 1.0))
    throw std::invalid_argument("p0 must be in [0, 1]");
  if (model == PropagationModel::fraction_threshold && !(phi > 0.0 && phi <= 1.0))
    throw std::invalid_argument("phi must be in (0, 1]");
}

}  // namespace

double topology_risk_exact(PropagationModel model, RiskTopology topology,
                           NodeId n, std::uint32_t k, double p0, double phi) {
  check_risk_params(model, p0, phi);
  if (n > 24) throw std::invalid_argument("exact enumeration limited to n <= 24");
  const Graph g = risk_topology_graph(topology, n, k);
  double total = 0.0;
  std::vector<NodeId> seeds;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    const int pop = __builtin_popcountll(mask);
    const double weight = std::pow(p0, pop) * std::pow(1.0 - p0, static_cast<int>(n) - pop);
    if (weight == 0.0) continue;
    seeds.clear();
    for (NodeId u = 0; u < n; ++u)
      if (mask & (1ull << u)) seeds.push_back(u);
    total += weight * static_cast<double>(propagate_failures(g, model, phi, seeds));
  }
  return total / static_cast<double>(n);
}

double topology_risk_mc(PropagationModel model, RiskTopology topology,
                        NodeId n, std::uint32_t k, double p0,
                        std::uint64_t trials, std::uint64_t seed, double phi) {
  check_risk_params(model, p0, phi);
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const Graph g = risk_topology_graph(topology, n, k);
  Rng rng(derive_seed(seed, seed_tag::trial));
  double total = 0.0;
  std::vector<NodeId> seeds;
  for (std::uint64_t t = 0; t < trials; ++t) {
    seeds.clear();
    for (NodeId u = 0; u < n; ++u)
      if (rng.bernoulli(p0)) seeds.push_back(u);
    total += static_cast<double>(propagate_failures(g, model, phi, seeds));
  }
  return total / (static_cast<double>(trials) * static_cast<double>(n));
}

double topology_risk_compare(PropagationModel model, RiskTopology topology,
                             NodeId n, std::uint32_t k, double p0,
                             std::uint64_t trials, std::uint64_t seed,
                             double phi) {
  if (n <= 12) return topology_risk_exact(model, topology, n, k, p0, phi);
  return topology_risk_mc(model, topology, n, k, p0, trials, seed, phi);
}

void write_cascade_trace_csv(std::ostream& out, const CascadeResult& result) {
  out << "round,new_failures,cumulative_failed,survivor_fraction\n";
  char buf[160];
  std::size_t cumulative = result.initial_failures;
  std::snprintf(buf, sizeof(buf), "0,%u,%zu,%.10g", result.initial_failures,
                cumulative, result.survivor_by_round[0]);
  out << buf << '\n';
  for (std::size_t r = 0; r < result.rounds.size(); ++r) {
    cumulative += result.rounds[r];
    std::snprintf(buf, sizeof(buf), "%zu,%u,%zu,%.10g", r + 1, result.rounds[r],
                  cumulative, result.survivor_by_round[r + 1]);
    out << buf << '\n';
  }
}

void write_beta_sweep_csv(std::ostream& out, const BetaSweepResult& result) {
  out << "beta,f,round,new_failures,cumulative_failed,survivor_fraction\n";
  char buf[200];
  for (const BetaSweepCell& cell : result.cells) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g",
                  cell.beta, cell.f, cell.rounds_mean, cell.secondary_mean,
                  cell.failed_mean, cell.survivor_mean);
    out << buf << '\n';
  }
}

}  // namespace resil
