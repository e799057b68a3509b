#include "resil/interdependent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "resil/parallel.hpp"
#include "resil/rng.hpp"

namespace resil {

std::string to_string(CouplingMode m) {
  switch (m) {
    case CouplingMode::identity: return "identity";
    case CouplingMode::random_permutation: return "random_permutation";
  }
  throw std::logic_error("unknown coupling mode");
}

CouplingMode coupling_mode_from_string(const std::string& name) {
  if (name == "identity") return CouplingMode::identity;
  if (name == "random_permutation") return CouplingMode::random_permutation;
  throw std::invalid_argument("unknown coupling mode: " + name);
}

InterdependentSystem couple(Graph net_a, Graph net_b, CouplingMode mode,
                            std::uint64_t seed) {
  if (net_a.node_count() != net_b.node_count())
    throw std::invalid_argument("coupled networks must have equal node counts");
  const NodeId n = net_a.node_count();
  std::vector<NodeId> a_to_b(n);
  for (NodeId u = 0; u < n; ++u) a_to_b[u] = u;
  if (mode == CouplingMode::random_permutation) {
    Rng rng(derive_seed(seed, seed_tag::coupling));
    rng.shuffle(a_to_b);
  }
  std::vector<NodeId> b_to_a(n);
  for (NodeId u = 0; u < n; ++u) b_to_a[a_to_b[u]] = u;
  return InterdependentSystem{std::move(net_a), std::move(net_b),
                              std::move(a_to_b), std::move(b_to_a)};
}

namespace {

// Kills every live node outside the largest live component. Ties go to the
// component holding the smallest node id.
std::size_t prune_to_giant(const Graph& g, std::vector<char>& live) {
  const NodeId n = g.node_count();
  std::vector<std::int32_t> label(n, -1);
  std::vector<std::size_t> comp_size;
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (!live[s] || label[s] >= 0) continue;
    const auto c = static_cast<std::int32_t>(comp_size.size());
    comp_size.push_back(0);
    label[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      ++comp_size[c];
      for (const Graph::Adj& a : g.neighbors(u)) {
        if (!live[a.to] || label[a.to] >= 0) continue;
        label[a.to] = c;
        stack.push_back(a.to);
      }
    }
  }
  if (comp_size.empty()) return 0;
  std::int32_t giant = 0;
  for (std::size_t c = 1; c < comp_size.size(); ++c)
    if (comp_size[c] > comp_size[giant]) giant = static_cast<std::int32_t>(c);
  std::size_t deaths = 0;
  for (NodeId u = 0; u < n; ++u) {
    if (live[u] && label[u] != giant) {
      live[u] = 0;
      ++deaths;
    }
  }
  return deaths;
}

std::size_t kill_dead_partners(const std::vector<NodeId>& partner,
                               const std::vector<char>& partner_live,
                               std::vector<char>& live) {
  std::size_t deaths = 0;
  for (NodeId u = 0; u < live.size(); ++u) {
    if (live[u] && !partner_live[partner[u]]) {
      live[u] = 0;
      ++deaths;
    }
  }
  return deaths;
}

double live_fraction(const std::vector<char>& live, double n) {
  std::size_t count = 0;
  for (char x : live) count += x != 0;
  return static_cast<double>(count) / n;
}

}  // namespace

std::size_t interdependent_settle(const InterdependentSystem& sys,
                                  std::vector<char>& live_a,
                                  std::vector<char>& live_b,
                                  std::vector<double>* live_trace) {
  const auto n = static_cast<double>(sys.net_a.node_count());
  std::size_t total = 0;
  while (true) {
    std::size_t deaths = 0;
    deaths += kill_dead_partners(sys.b_to_a, live_a, live_b);
    deaths += prune_to_giant(sys.net_b, live_b);
    deaths += kill_dead_partners(sys.a_to_b, live_b, live_a);
    deaths += prune_to_giant(sys.net_a, live_a);
    if (deaths == 0) break;
    total += deaths;
    if (live_trace) live_trace->push_back(live_fraction(live_a, n));
  }
  return total;
}

InterdependentResult interdependent_cascade(const InterdependentSystem& sys,
                                            double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("removal fraction must be in [0, 1]");
  const NodeId n = sys.net_a.node_count();
  InterdependentResult result;
  result.live_a.assign(n, 0);
  result.live_b.assign(n, 0);
  for (NodeId u : sys.net_a.present_nodes()) result.live_a[u] = 1;
  for (NodeId u : sys.net_b.present_nodes()) result.live_b[u] = 1;

  std::vector<NodeId> order = sys.net_a.present_nodes();
  Rng rng(derive_seed(seed, seed_tag::removal));
  rng.shuffle(order);
  auto k = static_cast<std::size_t>(std::floor(p * static_cast<double>(order.size())));
  k = std::min(k, order.size());
  for (std::size_t i = 0; i < k; ++i) result.live_a[order[i]] = 0;

  prune_to_giant(sys.net_a, result.live_a);
  result.live_fraction_by_round.push_back(
      live_fraction(result.live_a, static_cast<double>(n)));
  interdependent_settle(sys, result.live_a, result.live_b,
                        &result.live_fraction_by_round);
  result.mutual_survivor_fraction = result.live_fraction_by_round.back();
  return result;
}

PcSweepResult pc_sweep(const GeneratorSpec& spec_a, const GeneratorSpec& spec_b,
                       const std::vector<double>& p_grid,
                       std::uint32_t replicates, std::uint64_t seed,
                       const PcSweepOptions& options) {
  spec_a.validate();
  spec_b.validate();
  if (p_grid.empty()) throw std::invalid_argument("p_grid must be non-empty");
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    if (!(p_grid[i] >= 0.0 && p_grid[i] <= 1.0))
      throw std::invalid_argument("p_grid values must be in [0, 1]");
    if (i > 0 && p_grid[i] <= p_grid[i - 1])
      throw std::invalid_argument("p_grid must be strictly increasing");
  }
  if (replicates == 0) throw std::invalid_argument("replicates must be >= 1");

  std::vector<std::vector<double>> survivors(replicates);
  parallel_for_index(replicates, options.jobs, [&](std::size_t r) {
    const std::uint64_t rep = seed ^ static_cast<std::uint64_t>(r);
    Graph a = generate(spec_a.with_seed(derive_seed(rep, seed_tag::graph, 0)));
    Graph b = generate(spec_b.with_seed(derive_seed(rep, seed_tag::graph, 1)));
    const InterdependentSystem sys =
        couple(std::move(a), std::move(b), CouplingMode::random_permutation,
               derive_seed(rep, seed_tag::coupling));
    survivors[r].reserve(p_grid.size());
    for (double p : p_grid) {
      if (options.coupled) {
        survivors[r].push_back(
            interdependent_cascade(sys, p, rep).mutual_survivor_fraction);
      } else {
        const NodeId n = sys.net_a.node_count();
        std::vector<char> live(n, 0);
        for (NodeId u : sys.net_a.present_nodes()) live[u] = 1;
        std::vector<NodeId> order = sys.net_a.present_nodes();
        Rng rng(derive_seed(rep, seed_tag::removal));
        rng.shuffle(order);
        auto k = static_cast<std::size_t>(
            std::floor(p * static_cast<double>(order.size())));
        k = std::min(k, order.size());
        for (std::size_t i = 0; i < k; ++i) live[order[i]] = 0;
        prune_to_giant(sys.net_a, live);
        survivors[r].push_back(live_fraction(live, static_cast<double>(n)));
      }
    }
  });

  PcSweepResult result;
  result.points.resize(p_grid.size());
  for (std::size_t i = 0; i < p_grid.size(); ++i) {
    PcSweepPoint& pt = result.points[i];
    pt.p = p_grid[i];
    pt.replicates = replicates;
    double sum = 0.0;
    for (std::uint32_t r = 0; r < replicates; ++r) sum += survivors[r][i];
    pt.mutual_survivor_mean = sum / replicates;
    double ss = 0.0;
    for (std::uint32_t r = 0; r < replicates; ++r) {
      const double d = survivors[r][i] - pt.mutual_survivor_mean;
      ss += d * d;
    }
    pt.mutual_survivor_std = replicates > 1 ? std::sqrt(ss / (replicates - 1)) : 0.0;
  }

  constexpr double cutoff = 0.01;
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    if (result.points[i].mutual_survivor_mean < cutoff) {
      if (i == 0) {
        result.critical_fraction = result.points[0].p;
      } else {
        const double s0 = result.points[i - 1].mutual_survivor_mean;
        const double s1 = result.points[i].mutual_survivor_mean;
        const double p0 = result.points[i - 1].p, p1 = result.points[i].p;
        result.critical_fraction = p0 + (s0 - cutoff) * (p1 - p0) / (s0 - s1);
        result.straddles_transition = true;
      }
      break;
    }
  }
  return result;
}

void write_pc_sweep_csv(std::ostream& out, const PcSweepResult& result) {
  out << "p,mutual_survivor_mean,mutual_survivor_std,replicates\n";
  char buf[160];
  for (const PcSweepPoint& pt : result.points) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%u", pt.p,
                  pt.mutual_survivor_mean, pt.mutual_survivor_std,
                  pt.replicates);
    out << buf << '\n';
  }
}

void write_coupling(std::ostream& out, const InterdependentSystem& sys) {
  for (NodeId u = 0; u < sys.a_to_b.size(); ++u)
    out << u << ' ' << sys.a_to_b[u] << '\n';
}

std::vector<NodeId> read_coupling(std::istream& in, NodeId n) {
  std::vector<NodeId> a_to_b(n, n);
  std::vector<char> b_used(n, 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream row(line);
    long long a = 0, b = 0;
    if (!(row >> a)) continue;
    std::string extra;
    if (!(row >> b) || (row >> extra))
      throw std::invalid_argument("coupling line " + std::to_string(line_no) +
                                  ": expected \"a_node b_node\"");
    if (a < 0 || b < 0 || a >= static_cast<long long>(n) ||
        b >= static_cast<long long>(n))
      throw std::invalid_argument("coupling line " + std::to_string(line_no) +
                                  ": node id out of range");
    if (a_to_b[a] != n)
      throw std::invalid_argument("coupling line " + std::to_string(line_no) +
                                  ": node " + std::to_string(a) +
                                  " coupled twice");
    if (b_used[b])
      throw std::invalid_argument("coupling line " + std::to_string(line_no) +
                                  ": partner " + std::to_string(b) +
                                  " coupled twice");
    a_to_b[a] = static_cast<NodeId>(b);
    b_used[b] = 1;
  }
  for (NodeId u = 0; u < n; ++u)
    if (a_to_b[u] == n)
      throw std::invalid_argument("coupling is incomplete: node " +
                                  std::to_string(u) + " has no partner");
  return a_to_b;
}

InterdependentSystem read_interdependent_system(const std::string& path_a,
                                                const std::string& path_b,
                                                const std::string& path_coupling) {
  Graph a = read_edge_list_file(path_a);
  Graph b = read_edge_list_file(path_b);
  if (a.node_count() != b.node_count())
    throw std::invalid_argument("coupled networks must have equal node counts");
  std::ifstream in(path_coupling);
  if (!in) throw std::invalid_argument("cannot open " + path_coupling);
  std::vector<NodeId> a_to_b = read_coupling(in, a.node_count());
  std::vector<NodeId> b_to_a(a.node_count());
  for (NodeId u = 0; u < a.node_count(); ++u) b_to_a[a_to_b[u]] = u;
  return InterdependentSystem{std::move(a), std::move(b), std::move(a_to_b),
                              std::move(b_to_a)};
}

}  // namespace resil
