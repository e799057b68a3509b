#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "resil/graph.hpp"

namespace resil {

// Connected components over present nodes; absent nodes get component -1.
struct Components {
  std::vector<std::int32_t> label;  // per node id
  std::vector<std::uint32_t> size;  // per component
};
Components connected_components(const Graph& g);

// Largest connected component, ties broken by smallest contained node index.
// Sorted node ids; empty when the graph has no present nodes.
std::vector<NodeId> giant_component(const Graph& g);
std::uint32_t giant_component_size(const Graph& g);

// Mean shortest-path hop count over node pairs inside the giant component.
// Exact when the pair count fits the budget, otherwise estimated from full
// BFS sweeps of uniformly drawn source nodes until the budget of sampled
// pairs is covered. Throws when the giant component has fewer than 2 nodes.
inline constexpr std::uint64_t kDefaultPathPairBudget = 200000;
double average_path_length(const Graph& g,
                           std::optional<std::uint64_t> sample_pairs,
                           std::uint64_t seed);

// Shortest-path betweenness: endpoints excluded, unordered pairs counted
// once, equal splitting across degenerate shortest paths (Brandes).
std::vector<double> betweenness(const Graph& g);

// Same contract over weighted shortest paths with the given per-edge lengths.
std::vector<double> betweenness_weighted(const Graph& g, const std::vector<double>& edge_length);

}  // namespace resil
