#include "resil/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace resil {

Graph::Graph(NodeId node_count)
    : n_(node_count),
      present_count_(node_count),
      adj_(node_count),
      present_(node_count, 1) {}

void Graph::check_node(NodeId u) const {
  if (u >= n_) throw std::invalid_argument("Graph: node id out of range");
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  const NodeId other = adj_[u].size() <= adj_[v].size() ? v : u;
  for (const auto& e : a)
    if (e.to == other) return true;
  return false;
}

void Graph::add_edge(NodeId u, NodeId v) {
  if (weighted()) throw std::invalid_argument("Graph: mixing weighted and unweighted edges");
  check_node(u);
  check_node(v);
  if (u == v) throw std::invalid_argument("Graph: self-loop rejected");
  if (!present(u) || !present(v)) throw std::invalid_argument("Graph: edge touches absent node");
  if (has_edge(u, v)) throw std::invalid_argument("Graph: duplicate edge rejected");
  const EdgeId e = static_cast<EdgeId>(edges_.size());
  edges_.emplace_back(u, v);
  adj_[u].push_back({v, e});
  adj_[v].push_back({u, e});
}

void Graph::add_edge(NodeId u, NodeId v, double weight) {
  if (!edges_.empty() && !weighted())
    throw std::invalid_argument("Graph: mixing weighted and unweighted edges");
  if (!(weight > 0.0)) throw std::invalid_argument("Graph: weight must be > 0");
  check_node(u);
  check_node(v);
  if (u == v) throw std::invalid_argument("Graph: self-loop rejected");
  if (!present(u) || !present(v)) throw std::invalid_argument("Graph: edge touches absent node");
  if (has_edge(u, v)) throw std::invalid_argument("Graph: duplicate edge rejected");
  const EdgeId e = static_cast<EdgeId>(edges_.size());
  edges_.emplace_back(u, v);
  weights_.push_back(weight);
  adj_[u].push_back({v, e});
  adj_[v].push_back({u, e});
}

Graph Graph::without_nodes(const std::vector<NodeId>& removed) const {
  Graph out;
  out.n_ = n_;
  out.present_ = present_;
  for (NodeId u : removed) {
    check_node(u);
    out.present_[u] = 0;
  }
  out.present_count_ = 0;
  for (NodeId u = 0; u < n_; ++u)
    if (out.present_[u]) ++out.present_count_;
  out.adj_.assign(n_, {});
  out.edges_.reserve(edges_.size());
  const bool w = weighted();
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const auto [u, v] = edges_[e];
    if (!out.present_[u] || !out.present_[v]) continue;
    const EdgeId ne = static_cast<EdgeId>(out.edges_.size());
    out.edges_.emplace_back(u, v);
    if (w) out.weights_.push_back(weights_[e]);
    out.adj_[u].push_back({v, ne});
    out.adj_[v].push_back({u, ne});
  }
  return out;
}

std::vector<NodeId> Graph::present_nodes() const {
  std::vector<NodeId> out;
  out.reserve(present_count_);
  for (NodeId u = 0; u < n_; ++u)
    if (present_[u]) out.push_back(u);
  return out;
}

Graph Graph::with_weights(std::vector<double> weights) const {
  if (weights.size() != edges_.size())
    throw std::invalid_argument("Graph::with_weights: one weight per edge required");
  for (double w : weights)
    if (!(w > 0.0)) throw std::invalid_argument("Graph::with_weights: weight must be > 0");
  Graph out = *this;
  out.weights_ = std::move(weights);
  return out;
}

Graph read_edge_list(std::istream& in, std::optional<NodeId> node_count) {
  struct Row {
    NodeId u, v;
    double w;
    bool has_w;
  };
  std::vector<Row> rows;
  NodeId max_id = 0;
  bool any = false;
  bool any_weight = false, any_plain = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    long long u = -1, v = -1;
    double w = 0.0;
    if (!(ls >> u >> v) || u < 0 || v < 0)
      throw std::runtime_error("edge list: bad line " + std::to_string(lineno));
    bool has_w = static_cast<bool>(ls >> w);
    rows.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w, has_w});
    max_id = std::max({max_id, static_cast<NodeId>(u), static_cast<NodeId>(v)});
    any = true;
    (has_w ? any_weight : any_plain) = true;
  }
  if (any_weight && any_plain)
    throw std::runtime_error("edge list: mixed weighted and unweighted lines");
  const NodeId n = node_count.value_or(any ? max_id + 1 : 0);
  Graph g(n);
  for (const auto& r : rows) {
    if (r.has_w)
      g.add_edge(r.u, r.v, r.w);
    else
      g.add_edge(r.u, r.v);
  }
  return g;
}

Graph read_edge_list_file(const std::string& path, std::optional<NodeId> node_count) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in, node_count);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  char buf[64];
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edge(e);
    if (g.weighted()) {
      std::snprintf(buf, sizeof buf, "%u %u %.17g\n", u, v, g.weight(e));
    } else {
      std::snprintf(buf, sizeof buf, "%u %u\n", u, v);
    }
    out << buf;
  }
}

void write_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  write_edge_list(g, out);
}

}  // namespace resil
