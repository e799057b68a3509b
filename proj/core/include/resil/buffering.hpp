#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace resil {

struct Agent {
  std::vector<std::uint32_t> repertoire;
  std::uint32_t capacity = 1;
};

struct AgentPool {
  std::vector<Agent> agents;
  std::uint32_t n_functions = 0;

  void validate() const;
};

// Each agent gets a uniform random v-subset of the functions as repertoire.
// Repertoires are prefixes of one per-agent shuffle, so growing v at a fixed
// seed only ever adds abilities.
AgentPool build_pool(std::uint32_t n_agents, std::uint32_t n_functions,
                     std::uint32_t versatility, std::uint32_t capacity,
                     std::uint64_t seed);

struct FunctionDemand {
  std::vector<std::uint32_t> required;

  std::uint32_t total() const;
};

struct Assignment {
  std::vector<std::vector<std::uint32_t>> per_agent;
  std::vector<std::uint32_t> covered;
  std::vector<std::uint32_t> shortfall;
  std::uint32_t total_covered = 0;
  std::uint32_t total_demand = 0;

  bool feasible() const { return total_covered == total_demand; }
};

// Maximum demand coverage as a max flow over the agent-function structure:
// agents supply up to their capacity, functions absorb up to their demand.
// An agent may cover several units of the same function.
Assignment assign(const AgentPool& pool, const FunctionDemand& demand);

struct RecoveryReport {
  double restored_fraction = 0.0;
  Assignment assignment;
};

// Reassigns everything across the surviving agents.
RecoveryReport perturb_recover(const AgentPool& pool,
                               const FunctionDemand& demand,
                               const std::vector<std::uint32_t>& removed_agents);

struct DegeneracyCell {
  std::uint32_t versatility = 0;
  std::uint32_t capacity = 0;
  double restored_mean = 0.0;
  double restored_std = 0.0;
  std::uint32_t replicates = 0;
};

struct DegeneracySurface {
  std::vector<DegeneracyCell> cells;
};

// Mean restored fraction per (versatility, capacity) cell over random pools
// and random agent removals. Pools and removal sets are paired across cells:
// they depend only on (seed, replicate), never on the cell.
DegeneracySurface degeneracy_sweep(std::uint32_t n_agents,
                                   std::uint32_t n_functions,
                                   const std::vector<std::uint32_t>& v_grid,
                                   const std::vector<std::uint32_t>& c_grid,
                                   double removal_fraction,
                                   const FunctionDemand& demand,
                                   std::uint32_t replicates,
                                   std::uint64_t seed, unsigned jobs = 1);

void write_surface_csv(std::ostream& out, const DegeneracySurface& surface);

// One line per agent: "capacity: f3 f7 f9".
void write_pool(std::ostream& out, const AgentPool& pool);
AgentPool read_pool(std::istream& in);

}  // namespace resil
