#include "resil/buffering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "resil/parallel.hpp"
#include "resil/rng.hpp"

namespace resil {

void AgentPool::validate() const {
  if (agents.empty()) throw std::invalid_argument("pool.agents: must be non-empty");
  if (n_functions == 0) throw std::invalid_argument("pool.n_functions: must be >= 1");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const Agent& a = agents[i];
    const std::string who = "pool.agents[" + std::to_string(i) + "]";
    if (a.repertoire.empty())
      throw std::invalid_argument(who + ".repertoire: must be non-empty");
    if (a.capacity == 0)
      throw std::invalid_argument(who + ".capacity: must be >= 1");
    std::vector<char> seen(n_functions, 0);
    for (std::uint32_t f : a.repertoire) {
      if (f >= n_functions)
        throw std::invalid_argument(who + ".repertoire: function id out of range");
      if (seen[f])
        throw std::invalid_argument(who + ".repertoire: duplicate function");
      seen[f] = 1;
    }
  }
}

std::uint32_t FunctionDemand::total() const {
  std::uint32_t sum = 0;
  for (std::uint32_t r : required) sum += r;
  return sum;
}

AgentPool build_pool(std::uint32_t n_agents, std::uint32_t n_functions,
                     std::uint32_t versatility, std::uint32_t capacity,
                     std::uint64_t seed) {
  if (n_agents == 0) throw std::invalid_argument("n_agents must be >= 1");
  if (n_functions == 0) throw std::invalid_argument("n_functions must be >= 1");
  if (versatility < 1 || versatility > n_functions)
    throw std::invalid_argument("versatility must be in [1, n_functions]");
  if (capacity == 0) throw std::invalid_argument("capacity must be >= 1");

  AgentPool pool;
  pool.n_functions = n_functions;
  pool.agents.resize(n_agents);
  std::vector<std::uint32_t> perm(n_functions);
  for (std::uint32_t i = 0; i < n_agents; ++i) {
    for (std::uint32_t f = 0; f < n_functions; ++f) perm[f] = f;
    Rng rng(derive_seed(seed, seed_tag::pool, i));
    rng.shuffle(perm);
    Agent& agent = pool.agents[i];
    agent.capacity = capacity;
    agent.repertoire.assign(perm.begin(), perm.begin() + versatility);
    std::sort(agent.repertoire.begin(), agent.repertoire.end());
  }
  return pool;
}

namespace {

struct MaxFlow {
  struct E {
    std::uint32_t to;
    std::uint32_t rev;
    std::uint32_t cap;
  };
  std::vector<std::vector<E>> adj;
  std::vector<std::uint32_t> level, it;

  explicit MaxFlow(std::uint32_t n) : adj(n), level(n), it(n) {}

  void add_edge(std::uint32_t u, std::uint32_t v, std::uint32_t cap) {
    adj[u].push_back({v, static_cast<std::uint32_t>(adj[v].size()), cap});
    adj[v].push_back({u, static_cast<std::uint32_t>(adj[u].size()) - 1, 0});
  }

  bool bfs(std::uint32_t s, std::uint32_t t) {
    std::fill(level.begin(), level.end(), 0xffffffffu);
    std::queue<std::uint32_t> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::uint32_t u = q.front();
      q.pop();
      for (const E& e : adj[u]) {
        if (e.cap == 0 || level[e.to] != 0xffffffffu) continue;
        level[e.to] = level[u] + 1;
        q.push(e.to);
      }
    }
    return level[t] != 0xffffffffu;
  }

  std::uint32_t dfs(std::uint32_t u, std::uint32_t t, std::uint32_t pushed) {
    if (u == t) return pushed;
    for (std::uint32_t& i = it[u]; i < adj[u].size(); ++i) {
      E& e = adj[u][i];
      if (e.cap == 0 || level[e.to] != level[u] + 1) continue;
      const std::uint32_t got = dfs(e.to, t, std::min(pushed, e.cap));
      if (got == 0) continue;
      e.cap -= got;
      adj[e.to][e.rev].cap += got;
      return got;
    }
    return 0;
  }

  std::uint32_t run(std::uint32_t s, std::uint32_t t) {
    std::uint32_t flow = 0;
    while (bfs(s, t)) {
      std::fill(it.begin(), it.end(), 0);
      while (std::uint32_t got = dfs(s, t, 0xffffffffu)) flow += got;
    }
    return flow;
  }
};

Assignment assign_alive(const AgentPool& pool, const FunctionDemand& demand,
                        const std::vector<char>& alive) {
  const auto n_agents = static_cast<std::uint32_t>(pool.agents.size());
  const std::uint32_t n_functions = pool.n_functions;
  const std::uint32_t source = 0;
  const std::uint32_t sink = 1 + n_agents + n_functions;

  MaxFlow flow(sink + 1);
  for (std::uint32_t i = 0; i < n_agents; ++i) {
    if (!alive[i]) continue;
    flow.add_edge(source, 1 + i, pool.agents[i].capacity);
    for (std::uint32_t f : pool.agents[i].repertoire)
      if (demand.required[f] > 0)
        flow.add_edge(1 + i, 1 + n_agents + f, demand.required[f]);
  }
  for (std::uint32_t f = 0; f < n_functions; ++f)
    if (demand.required[f] > 0)
      flow.add_edge(1 + n_agents + f, sink, demand.required[f]);

  Assignment result;
  result.total_demand = demand.total();
  result.total_covered = flow.run(source, sink);
  result.per_agent.resize(n_agents);
  result.covered.assign(n_functions, 0);
  for (std::uint32_t i = 0; i < n_agents; ++i) {
    for (const MaxFlow::E& e : flow.adj[1 + i]) {
      if (e.to <= n_agents || e.to == sink || e.to == source) continue;
      const std::uint32_t f = e.to - 1 - n_agents;
      const std::uint32_t used = flow.adj[e.to][e.rev].cap;
      for (std::uint32_t c = 0; c < used; ++c) result.per_agent[i].push_back(f);
      result.covered[f] += used;
    }
  }
  result.shortfall.resize(n_functions);
  for (std::uint32_t f = 0; f < n_functions; ++f)
    result.shortfall[f] = demand.required[f] - result.covered[f];
  return result;
}

void check_demand(const AgentPool& pool, const FunctionDemand& demand) {
  if (demand.required.size() != pool.n_functions)
    throw std::invalid_argument("demand must list every function exactly once");
  if (demand.total() == 0)
    throw std::invalid_argument("demand.total: must be >= 1");
}

}  // namespace

Assignment assign(const AgentPool& pool, const FunctionDemand& demand) {
  pool.validate();
  check_demand(pool, demand);
  return assign_alive(pool, demand, std::vector<char>(pool.agents.size(), 1));
}

RecoveryReport perturb_recover(const AgentPool& pool,
                               const FunctionDemand& demand,
                               const std::vector<std::uint32_t>& removed_agents) {
  pool.validate();
  check_demand(pool, demand);
  std::vector<char> alive(pool.agents.size(), 1);
  for (std::uint32_t i : removed_agents) {
    if (i >= pool.agents.size())
      throw std::invalid_argument("removed agent index out of range");
    alive[i] = 0;
  }
  RecoveryReport report;
  report.assignment = assign_alive(pool, demand, alive);
  report.restored_fraction =
      static_cast<double>(report.assignment.total_covered) /
      static_cast<double>(report.assignment.total_demand);
  return report;
}

DegeneracySurface degeneracy_sweep(std::uint32_t n_agents,
                                   std::uint32_t n_functions,
                                   const std::vector<std::uint32_t>& v_grid,
                                   const std::vector<std::uint32_t>& c_grid,
                                   double removal_fraction,
                                   const FunctionDemand& demand,
                                   std::uint32_t replicates,
                                   std::uint64_t seed, unsigned jobs) {
  if (n_agents == 0) throw std::invalid_argument("n_agents must be >= 1");
  if (n_functions == 0) throw std::invalid_argument("n_functions must be >= 1");
  if (v_grid.empty()) throw std::invalid_argument("v_grid must be non-empty");
  if (c_grid.empty()) throw std::invalid_argument("c_grid must be non-empty");
  for (std::size_t i = 0; i < v_grid.size(); ++i) {
    if (v_grid[i] < 1 || v_grid[i] > n_functions)
      throw std::invalid_argument("v_grid values must be in [1, n_functions]");
    if (i > 0 && v_grid[i] <= v_grid[i - 1])
      throw std::invalid_argument("v_grid must be strictly increasing");
  }
  for (std::size_t i = 0; i < c_grid.size(); ++i) {
    if (c_grid[i] == 0) throw std::invalid_argument("c_grid values must be >= 1");
    if (i > 0 && c_grid[i] <= c_grid[i - 1])
      throw std::invalid_argument("c_grid must be strictly increasing");
  }
  if (!(removal_fraction >= 0.0 && removal_fraction <= 1.0))
    throw std::invalid_argument("removal_fraction must be in [0, 1]");
  if (demand.required.size() != n_functions)
    throw std::invalid_argument("demand must list every function exactly once");
  if (demand.total() == 0) throw std::invalid_argument("demand.total: must be >= 1");
  if (replicates == 0) throw std::invalid_argument("replicates must be >= 1");

  const std::size_t cells = v_grid.size() * c_grid.size();
  std::vector<std::vector<double>> restored(replicates,
                                            std::vector<double>(cells, 0.0));

  parallel_for_index(replicates, jobs, [&](std::size_t r) {
    const std::uint64_t rep = seed ^ static_cast<std::uint64_t>(r);

    std::vector<std::vector<std::uint32_t>> perm(n_agents);
    for (std::uint32_t i = 0; i < n_agents; ++i) {
      perm[i].resize(n_functions);
      for (std::uint32_t f = 0; f < n_functions; ++f) perm[i][f] = f;
      Rng rng(derive_seed(rep, seed_tag::pool, i));
      rng.shuffle(perm[i]);
    }

    std::vector<std::uint32_t> order(n_agents);
    for (std::uint32_t i = 0; i < n_agents; ++i) order[i] = i;
    Rng removal_rng(derive_seed(rep, seed_tag::removal));
    removal_rng.shuffle(order);
    const auto k = static_cast<std::size_t>(
        std::floor(removal_fraction * static_cast<double>(n_agents)));
    std::vector<char> alive(n_agents, 1);
    for (std::size_t i = 0; i < std::min(k, order.size()); ++i) alive[order[i]] = 0;

    AgentPool pool;
    pool.n_functions = n_functions;
    pool.agents.resize(n_agents);
    for (std::size_t vi = 0; vi < v_grid.size(); ++vi) {
      for (std::uint32_t i = 0; i < n_agents; ++i) {
        Agent& agent = pool.agents[i];
        agent.repertoire.assign(perm[i].begin(), perm[i].begin() + v_grid[vi]);
        std::sort(agent.repertoire.begin(), agent.repertoire.end());
      }
      for (std::size_t ci = 0; ci < c_grid.size(); ++ci) {
        for (Agent& agent : pool.agents) agent.capacity = c_grid[ci];
        const Assignment a = assign_alive(pool, demand, alive);
        restored[r][vi * c_grid.size() + ci] =
            static_cast<double>(a.total_covered) /
            static_cast<double>(a.total_demand);
      }
    }
  });

  DegeneracySurface surface;
  surface.cells.resize(cells);
  for (std::size_t vi = 0; vi < v_grid.size(); ++vi) {
    for (std::size_t ci = 0; ci < c_grid.size(); ++ci) {
      const std::size_t c = vi * c_grid.size() + ci;
      DegeneracyCell& cell = surface.cells[c];
      cell.versatility = v_grid[vi];
      cell.capacity = c_grid[ci];
      cell.replicates = replicates;
      double sum = 0.0;
      for (std::uint32_t r = 0; r < replicates; ++r) sum += restored[r][c];
      cell.restored_mean = sum / replicates;
      double ss = 0.0;
      for (std::uint32_t r = 0; r < replicates; ++r) {
        const double d = restored[r][c] - cell.restored_mean;
        ss += d * d;
      }
      cell.restored_std = replicates > 1 ? std::sqrt(ss / (replicates - 1)) : 0.0;
    }
  }
  return surface;
}

void write_surface_csv(std::ostream& out, const DegeneracySurface& surface) {
  out << "versatility,capacity,restored_mean,restored_std,replicates\n";
  char buf[160];
  for (const DegeneracyCell& cell : surface.cells) {
    std::snprintf(buf, sizeof(buf), "%u,%u,%.10g,%.10g,%u", cell.versatility,
                  cell.capacity, cell.restored_mean, cell.restored_std,
                  cell.replicates);
    out << buf << '\n';
  }
}

void write_pool(std::ostream& out, const AgentPool& pool) {
  for (const Agent& agent : pool.agents) {
    out << agent.capacity << ':';
    for (std::uint32_t f : agent.repertoire) out << " f" << f;
    out << '\n';
  }
}

AgentPool read_pool(std::istream& in) {
  AgentPool pool;
  std::uint32_t max_function = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("pool line " + std::to_string(line_no) +
                                  ": expected \"capacity: f1 f2 ...\"");
    Agent agent;
    try {
      std::size_t used = 0;
      const long long cap = std::stoll(line.substr(0, colon), &used);
      if (cap < 1 || line.substr(0, colon).find_first_not_of(" \t", used) !=
                         std::string::npos)
        throw std::invalid_argument("bad capacity");
      agent.capacity = static_cast<std::uint32_t>(cap);
    } catch (const std::exception&) {
      throw std::invalid_argument("pool line " + std::to_string(line_no) +
                                  ": invalid capacity");
    }
    std::istringstream rest(line.substr(colon + 1));
    std::string token;
    while (rest >> token) {
      if (token.size() < 2 || token[0] != 'f' ||
          token.find_first_not_of("0123456789", 1) != std::string::npos)
        throw std::invalid_argument("pool line " + std::to_string(line_no) +
                                    ": invalid function token \"" + token + "\"");
      const auto f = static_cast<std::uint32_t>(std::stoul(token.substr(1)));
      agent.repertoire.push_back(f);
      max_function = std::max(max_function, f);
    }
    if (agent.repertoire.empty())
      throw std::invalid_argument("pool line " + std::to_string(line_no) +
                                  ": empty repertoire");
    pool.agents.push_back(std::move(agent));
  }
  if (pool.agents.empty()) throw std::invalid_argument("pool file has no agents");
  pool.n_functions = max_function + 1;
  pool.validate();
  return pool;
}

}  // namespace resil
