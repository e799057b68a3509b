#include "resil/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "resil/rng.hpp"

namespace resil {

Components connected_components(const Graph& g) {
  const NodeId n = g.node_count();
  Components c;
  c.label.assign(n, -1);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < n; ++s) {
    if (!g.present(s) || c.label[s] >= 0) continue;
    const std::int32_t id = static_cast<std::int32_t>(c.size.size());
    std::uint32_t count = 0;
    c.label[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      ++count;
      for (const auto& a : g.neighbors(u)) {
        if (c.label[a.to] < 0) {
          c.label[a.to] = id;
          stack.push_back(a.to);
        }
      }
    }
    c.size.push_back(count);
  }
  return c;
}

std::vector<NodeId> giant_component(const Graph& g) {
  const Components c = connected_components(g);
  if (c.size.empty()) return {};
  // Component ids are assigned in order of their smallest node, so the first
  // maximal one wins the tie by construction.
  std::int32_t best = 0;
  for (std::size_t i = 1; i < c.size.size(); ++i)
    if (c.size[i] > c.size[static_cast<std::size_t>(best)]) best = static_cast<std::int32_t>(i);
  std::vector<NodeId> out;
  out.reserve(c.size[static_cast<std::size_t>(best)]);
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (c.label[u] == best) out.push_back(u);
  return out;
}

std::uint32_t giant_component_size(const Graph& g) {
  const Components c = connected_components(g);
  std::uint32_t best = 0;
  for (std::uint32_t s : c.size) best = std::max(best, s);
  return best;
}

namespace {

// Distances from s to every node of its component; -1 elsewhere.
void bfs_distances(const Graph& g, NodeId s, std::vector<std::int32_t>& dist,
                   std::vector<NodeId>& queue) {
  std::fill(dist.begin(), dist.end(), -1);
  queue.clear();
  dist[s] = 0;
  queue.push_back(s);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (const auto& a : g.neighbors(u)) {
      if (dist[a.to] < 0) {
        dist[a.to] = dist[u] + 1;
        queue.push_back(a.to);
      }
    }
  }
}

}  // namespace

double average_path_length(const Graph& g, std::optional<std::uint64_t> sample_pairs,
                           std::uint64_t seed) {
  const auto giant = giant_component(g);
  const std::uint64_t s = giant.size();
  if (s < 2) throw std::invalid_argument("average_path_length: giant component smaller than 2");
  const std::uint64_t all_pairs = s * (s - 1) / 2;
  const std::uint64_t budget = sample_pairs.value_or(kDefaultPathPairBudget);

  std::vector<std::int32_t> dist(g.node_count());
  std::vector<NodeId> queue;
  queue.reserve(s);

  if (all_pairs <= budget) {
    double total = 0.0;
    for (NodeId src : giant) {
      bfs_distances(g, src, dist, queue);
      for (NodeId t : giant)
        if (t > src) total += dist[t];
    }
    return total / static_cast<double>(all_pairs);
  }

  // Sampled mode: each full BFS contributes the s-1 pairs of one uniformly
  // drawn source, an unbiased estimate of the ordered-pair mean (equal to
  // the unordered mean).
  const std::uint64_t per_source = s - 1;
  const std::uint64_t sources = std::max<std::uint64_t>(1, (budget + per_source - 1) / per_source);
  Rng rng(derive_seed(seed, seed_tag::sampling, 0));
  double total = 0.0;
  std::uint64_t counted = 0;
  for (std::uint64_t i = 0; i < sources; ++i) {
    const NodeId src = giant[rng.index(giant.size())];
    bfs_distances(g, src, dist, queue);
    for (NodeId t : giant)
      if (t != src) total += dist[t];
    counted += per_source;
  }
  return total / static_cast<double>(counted);
}

std::vector<double> betweenness(const Graph& g) {
  const NodeId n = g.node_count();
  std::vector<double> centrality(n, 0.0);
  std::vector<std::int32_t> dist(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<NodeId> order;
  order.reserve(n);

  for (NodeId s = 0; s < n; ++s) {
    if (!g.present(s)) continue;
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId u = order[head];
      for (const auto& a : g.neighbors(u)) {
        if (dist[a.to] < 0) {
          dist[a.to] = dist[u] + 1;
          order.push_back(a.to);
        }
        if (dist[a.to] == dist[u] + 1) sigma[a.to] += sigma[u];
      }
    }
    // Reverse-BFS accumulation of pair dependencies.
    for (std::size_t i = order.size(); i-- > 1;) {
      const NodeId w = order[i];
      for (const auto& a : g.neighbors(w)) {
        if (dist[a.to] == dist[w] - 1)
          delta[a.to] += sigma[a.to] / sigma[w] * (1.0 + delta[w]);
      }
      centrality[w] += delta[w];
    }
  }
  // Each unordered pair was counted from both endpoints.
  for (double& c : centrality) c *= 0.5;
  return centrality;
}

std::vector<double> betweenness_weighted(const Graph& g,
                                         const std::vector<double>& edge_length) {
  if (edge_length.size() != g.edge_count())
    throw std::invalid_argument("betweenness_weighted: one length per edge required");
  for (double l : edge_length)
    if (!(l > 0.0)) throw std::invalid_argument("betweenness_weighted: lengths must be > 0");

  const NodeId n = g.node_count();
  std::vector<double> centrality(n, 0.0);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n), sigma(n), delta(n);
  std::vector<char> settled(n);
  std::vector<NodeId> order;
  order.reserve(n);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;

  for (NodeId s = 0; s < n; ++s) {
    if (!g.present(s)) continue;
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(settled.begin(), settled.end(), 0);
    order.clear();
    dist[s] = 0.0;
    sigma[s] = 1.0;
    heap.push({0.0, s});
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (settled[u]) continue;
      settled[u] = 1;
      order.push_back(u);
      for (const auto& a : g.neighbors(u)) {
        const double nd = d + edge_length[a.edge];
        if (nd < dist[a.to]) {
          dist[a.to] = nd;
          sigma[a.to] = sigma[u];
          heap.push({nd, a.to});
        } else if (nd == dist[a.to] && !settled[a.to]) {
          sigma[a.to] += sigma[u];
        }
      }
    }
    for (std::size_t i = order.size(); i-- > 1;) {
      const NodeId w = order[i];
      for (const auto& a : g.neighbors(w)) {
        // a.to is a Dijkstra predecessor of w iff the edge closes the
        // distance gap exactly.
        if (dist[a.to] + edge_length[a.edge] == dist[w])
          delta[a.to] += sigma[a.to] / sigma[w] * (1.0 + delta[w]);
      }
      centrality[w] += delta[w];
    }
  }
  for (double& c : centrality) c *= 0.5;
  return centrality;
}

}  // namespace resil
