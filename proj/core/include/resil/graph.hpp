#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace resil {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// Undirected simple graph on node ids [0, node_count), optionally edge
// weighted (weights are branch conductances, strictly positive, all edges or
// none). Node removal keeps the original labels: removed nodes stay in the
// index space but are marked absent and lose their incident edges.
class Graph {
 public:
  struct Adj {
    NodeId to;
    EdgeId edge;
  };

  Graph() = default;
  explicit Graph(NodeId node_count);

  void add_edge(NodeId u, NodeId v);
  void add_edge(NodeId u, NodeId v, double weight);

  NodeId node_count() const { return n_; }
  NodeId present_count() const { return present_count_; }
  bool present(NodeId u) const { return present_[u] != 0; }
  std::size_t edge_count() const { return edges_.size(); }
  bool weighted() const { return !weights_.empty(); }

  const std::vector<Adj>& neighbors(NodeId u) const { return adj_[u]; }
  std::size_t degree(NodeId u) const { return adj_[u].size(); }
  bool has_edge(NodeId u, NodeId v) const;

  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }
  double weight(EdgeId e) const { return weights_[e]; }
  std::pair<NodeId, NodeId> edge(EdgeId e) const { return edges_[e]; }

  // Copy with the given nodes marked absent and their edges dropped.
  Graph without_nodes(const std::vector<NodeId>& removed) const;

  // Present node ids in increasing order.
  std::vector<NodeId> present_nodes() const;

  // Same topology, new weights (one per edge, in edge id order).
  Graph with_weights(std::vector<double> weights) const;

 private:
  void check_node(NodeId u) const;

  NodeId n_ = 0;
  NodeId present_count_ = 0;
  std::vector<std::vector<Adj>> adj_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<double> weights_;
  std::vector<char> present_;
};

// Edge-list text format: one edge per line, "u v" or "u v w", 0-indexed
// decimal, '#' starts a comment line. Writer and reader are inverse up to
// edge ordering; node count is inferred as max index + 1 unless given.
Graph read_edge_list(std::istream& in, std::optional<NodeId> node_count = {});
Graph read_edge_list_file(const std::string& path, std::optional<NodeId> node_count = {});
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list_file(const Graph& g, const std::string& path);

}  // namespace resil
