#include "resil/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "resil/metrics.hpp"
#include "resil/parallel.hpp"
#include "resil/rng.hpp"

namespace resil {

std::string to_string(RemovalStrategy s) {
  switch (s) {
    case RemovalStrategy::random: return "random";
    case RemovalStrategy::targeted_static_degree: return "targeted_static_degree";
    case RemovalStrategy::targeted_adaptive_degree: return "targeted_adaptive_degree";
  }
  throw std::logic_error("unknown removal strategy");
}

RemovalStrategy removal_strategy_from_string(const std::string& name) {
  if (name == "random") return RemovalStrategy::random;
  if (name == "targeted_static_degree") return RemovalStrategy::targeted_static_degree;
  if (name == "targeted_adaptive_degree") return RemovalStrategy::targeted_adaptive_degree;
  throw std::invalid_argument("unknown removal strategy: " + name);
}

namespace {

std::vector<NodeId> adaptive_degree_order(const Graph& g, Rng& rng) {
  const NodeId n = g.node_count();
  std::vector<std::uint64_t> priority(n, 0);
  for (NodeId u = 0; u < n; ++u) priority[u] = rng.u64();

  std::vector<std::int64_t> deg(n, -1);
  for (NodeId u : g.present_nodes()) deg[u] = static_cast<std::int64_t>(g.degree(u));

  // Max degree first, random priority breaking ties; stale heap entries are
  // skipped when the recorded degree no longer matches.
  using Entry = std::tuple<std::int64_t, std::uint64_t, NodeId>;
  auto cmp = [](const Entry& a, const Entry& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) > std::get<1>(b);
    return std::get<2>(a) > std::get<2>(b);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  for (NodeId u : g.present_nodes()) heap.emplace(deg[u], priority[u], u);

  std::vector<char> removed(n, 0);
  std::vector<NodeId> order;
  order.reserve(g.present_count());
  while (!heap.empty()) {
    auto [d, pri, u] = heap.top();
    heap.pop();
    if (removed[u] || d != deg[u]) continue;
    removed[u] = 1;
    order.push_back(u);
    for (const Graph::Adj& a : g.neighbors(u)) {
      if (removed[a.to]) continue;
      --deg[a.to];
      heap.emplace(deg[a.to], priority[a.to], a.to);
    }
  }
  return order;
}

}  // namespace

std::vector<NodeId> removal_order(const Graph& g, const RemovalPlan& plan) {
  Rng rng(derive_seed(plan.seed, seed_tag::removal));
  std::vector<NodeId> order = g.present_nodes();
  switch (plan.strategy) {
    case RemovalStrategy::random:
      rng.shuffle(order);
      return order;
    case RemovalStrategy::targeted_static_degree: {
      const NodeId n = g.node_count();
      std::vector<std::uint64_t> priority(n, 0);
      for (NodeId u = 0; u < n; ++u) priority[u] = rng.u64();
      std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        const std::size_t da = g.degree(a), db = g.degree(b);
        if (da != db) return da > db;
        if (priority[a] != priority[b]) return priority[a] < priority[b];
        return a < b;
      });
      return order;
    }
    case RemovalStrategy::targeted_adaptive_degree:
      return adaptive_degree_order(g, rng);
  }
  throw std::logic_error("unknown removal strategy");
}

Graph apply_removal(const Graph& g, const RemovalPlan& plan, double f) {
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("removal fraction must be in [0, 1]");
  const std::vector<NodeId> order = removal_order(g, plan);
  auto k = static_cast<std::size_t>(std::floor(f * static_cast<double>(g.present_count())));
  k = std::min(k, order.size());
  return g.without_nodes({order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k)});
}

namespace {

struct ReplicateRow {
  double S = 0.0;
  double L = 0.0;
  bool has_L = false;
};

void check_f_grid(const std::vector<double>& f_grid) {
  if (f_grid.empty()) throw std::invalid_argument("f_grid must be non-empty");
  for (std::size_t i = 0; i < f_grid.size(); ++i) {
    if (!(f_grid[i] >= 0.0 && f_grid[i] <= 1.0))
      throw std::invalid_argument("f_grid values must be in [0, 1]");
    if (i > 0 && f_grid[i] <= f_grid[i - 1])
      throw std::invalid_argument("f_grid must be strictly increasing");
  }
}

// Walks one replicate along nested prefixes of a single removal order.
void replicate_curve(const Graph& g, const RemovalPlan& plan,
                     const std::vector<double>& f_grid,
                     std::uint64_t sampling_seed, const SweepOptions& options,
                     std::vector<ReplicateRow>& rows) {
  const std::vector<NodeId> order = removal_order(g, plan);
  const auto n = static_cast<double>(g.present_count());
  rows.assign(f_grid.size(), ReplicateRow{});
  for (std::size_t i = 0; i < f_grid.size(); ++i) {
    auto k = static_cast<std::size_t>(std::floor(f_grid[i] * n));
    k = std::min(k, order.size());
    const Graph sub = g.without_nodes(
        {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k)});
    const std::size_t giant = giant_component_size(sub);
    rows[i].S = n > 0 ? static_cast<double>(giant) / n : 0.0;
    if (options.compute_path_length && giant >= 2) {
      rows[i].L = average_path_length(sub, options.path_pair_budget,
                                      derive_seed(sampling_seed, seed_tag::sampling, i));
      rows[i].has_L = true;
    }
  }
}

PercolationCurve aggregate(const std::vector<double>& f_grid,
                           const std::vector<std::vector<ReplicateRow>>& all) {
  PercolationCurve curve;
  curve.points.resize(f_grid.size());
  const auto reps = static_cast<std::uint32_t>(all.size());
  for (std::size_t i = 0; i < f_grid.size(); ++i) {
    PercolationPoint& pt = curve.points[i];
    pt.f = f_grid[i];
    pt.replicates = reps;
    double sum = 0.0, sum_L = 0.0;
    std::uint32_t n_L = 0;
    for (const auto& rows : all) {
      sum += rows[i].S;
      if (rows[i].has_L) {
        sum_L += rows[i].L;
        ++n_L;
      }
    }
    pt.S_mean = sum / reps;
    double ss = 0.0;
    for (const auto& rows : all) {
      const double d = rows[i].S - pt.S_mean;
      ss += d * d;
    }
    pt.S_std = reps > 1 ? std::sqrt(ss / (reps - 1)) : 0.0;
    pt.L_mean = n_L > 0 ? sum_L / n_L : 0.0;
  }
  return curve;
}

}  // namespace

PercolationCurve percolation_sweep(const GeneratorSpec& spec,
                                   const RemovalPlan& plan,
                                   const std::vector<double>& f_grid,
                                   std::uint32_t replicates,
                                   std::uint64_t master_seed,
                                   const SweepOptions& options) {
  spec.validate();
  check_f_grid(f_grid);
  if (replicates == 0) throw std::invalid_argument("replicates must be >= 1");
  std::vector<std::vector<ReplicateRow>> all(replicates);
  parallel_for_index(replicates, options.jobs, [&](std::size_t r) {
    const std::uint64_t rep = master_seed ^ static_cast<std::uint64_t>(r);
    const Graph g = generate(spec.with_seed(rep));
    RemovalPlan rep_plan = plan;
    rep_plan.seed = rep;
    replicate_curve(g, rep_plan, f_grid, rep, options, all[r]);
  });
  return aggregate(f_grid, all);
}

PercolationCurve percolation_sweep_graph(const Graph& g,
                                         const RemovalPlan& plan,
                                         const std::vector<double>& f_grid,
                                         std::uint32_t replicates,
                                         std::uint64_t master_seed,
                                         const SweepOptions& options) {
  check_f_grid(f_grid);
  if (replicates == 0) throw std::invalid_argument("replicates must be >= 1");
  std::vector<std::vector<ReplicateRow>> all(replicates);
  parallel_for_index(replicates, options.jobs, [&](std::size_t r) {
    const std::uint64_t rep = master_seed ^ static_cast<std::uint64_t>(r);
    RemovalPlan rep_plan = plan;
    rep_plan.seed = rep;
    replicate_curve(g, rep_plan, f_grid, rep, options, all[r]);
  });
  return aggregate(f_grid, all);
}

std::optional<double> empirical_threshold(const PercolationCurve& curve,
                                          double cutoff) {
  const auto& pts = curve.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].S_mean < cutoff) {
      if (i == 0) return pts[0].f;
      const double s0 = pts[i - 1].S_mean, s1 = pts[i].S_mean;
      const double f0 = pts[i - 1].f, f1 = pts[i].f;
      return f0 + (s0 - cutoff) * (f1 - f0) / (s0 - s1);
    }
  }
  return std::nullopt;
}

void write_percolation_csv(std::ostream& out, const PercolationCurve& curve) {
  out << "f,S_mean,S_std,L_mean,replicates\n";
  char buf[160];
  for (const PercolationPoint& pt : curve.points) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%u", pt.f,
                  pt.S_mean, pt.S_std, pt.L_mean, pt.replicates);
    out << buf << '\n';
  }
}

}  // namespace resil
