#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "resil/generate.hpp"
#include "resil/graph.hpp"

namespace resil {

enum class CouplingMode : std::uint8_t { identity, random_permutation };

std::string to_string(CouplingMode m);
CouplingMode coupling_mode_from_string(const std::string& name);

// Two equal-size networks with a one-to-one dependency between their nodes:
// a node functions only while its partner does.
struct InterdependentSystem {
  Graph net_a;
  Graph net_b;
  std::vector<NodeId> a_to_b;
  std::vector<NodeId> b_to_a;
};

InterdependentSystem couple(Graph net_a, Graph net_b, CouplingMode mode,
                            std::uint64_t seed);

struct InterdependentResult {
  double mutual_survivor_fraction = 0.0;
  std::vector<double> live_fraction_by_round;
  std::vector<char> live_a;
  std::vector<char> live_b;
};

// Kills dead-partner nodes and prunes each network to its giant component,
// alternating until nothing changes. Returns the number of deaths applied.
std::size_t interdependent_settle(const InterdependentSystem& sys,
                                  std::vector<char>& live_a,
                                  std::vector<char>& live_b,
                                  std::vector<double>* live_trace = nullptr);

// Removes floor(p * n) random nodes of A, prunes A to its giant component,
// then settles the coupled system to its mutual fixed point.
InterdependentResult interdependent_cascade(const InterdependentSystem& sys,
                                            double p, std::uint64_t seed);

struct PcSweepPoint {
  double p = 0.0;
  double mutual_survivor_mean = 0.0;
  double mutual_survivor_std = 0.0;
  std::uint32_t replicates = 0;
};

struct PcSweepResult {
  std::vector<PcSweepPoint> points;
  std::optional<double> critical_fraction;
  bool straddles_transition = false;
};

struct PcSweepOptions {
  bool coupled = true;
  unsigned jobs = 1;
};

// Survivor curve over the removal grid; the critical fraction is where the
// mean survivor fraction first drops below 1% (interpolated). With coupled
// false the cross-network deaths are skipped, leaving plain percolation.
PcSweepResult pc_sweep(const GeneratorSpec& spec_a, const GeneratorSpec& spec_b,
                       const std::vector<double>& p_grid,
                       std::uint32_t replicates, std::uint64_t seed,
                       const PcSweepOptions& options = {});

void write_pc_sweep_csv(std::ostream& out, const PcSweepResult& result);

// Coupling file: one "a_node b_node" line per dependency, '#' comments.
void write_coupling(std::ostream& out, const InterdependentSystem& sys);
std::vector<NodeId> read_coupling(std::istream& in, NodeId n);
InterdependentSystem read_interdependent_system(const std::string& path_a,
                                                const std::string& path_b,
                                                const std::string& path_coupling);

}  // namespace resil
