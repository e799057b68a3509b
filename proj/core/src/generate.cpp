#include "resil/generate.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "resil/rng.hpp"

namespace resil {

namespace {

inline std::uint64_t edge_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// G(n, p) via geometric skips over the ordered pair list (Batagelj-Brandes).
Graph erdos_renyi(std::uint32_t n, double mean_degree, std::uint64_t seed) {
  const double p = mean_degree / static_cast<double>(n - 1);
  Graph g(n);
  if (p <= 0.0) return g;
  Rng rng(seed);
  if (p >= 1.0) {
    for (NodeId v = 1; v < n; ++v)
      for (NodeId u = 0; u < v; ++u) g.add_edge(u, v);
    return g;
  }
  const double log_q = std::log(1.0 - p);
  std::int64_t v = 1, w = -1;
  while (v < static_cast<std::int64_t>(n)) {
    const double r = 1.0 - rng.real();  // (0, 1]
    w += 1 + static_cast<std::int64_t>(std::floor(std::log(r) / log_q));
    while (w >= v && v < static_cast<std::int64_t>(n)) {
      w -= v;
      ++v;
    }
    if (v < static_cast<std::int64_t>(n))
      g.add_edge(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return g;
}

// Barabasi-Albert: seed clique on m+1 nodes, each new node attaches to m
// distinct targets drawn proportional to degree (repeated-endpoint list).
Graph preferential_attachment(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
  Rng rng(seed);
  Graph g(n);
  std::vector<NodeId> endpoints;
  endpoints.reserve(2ull * m * n);
  for (NodeId v = 1; v <= m; ++v) {
    for (NodeId u = 0; u < v; ++u) {
      g.add_edge(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<NodeId> targets(m);
  for (NodeId v = m + 1; v < n; ++v) {
    std::size_t picked = 0;
    while (picked < m) {
      const NodeId t = endpoints[rng.index(endpoints.size())];
      bool dup = false;
      for (std::size_t i = 0; i < picked; ++i) dup |= (targets[i] == t);
      if (!dup) targets[picked++] = t;
    }
    for (std::size_t i = 0; i < m; ++i) {
      g.add_edge(targets[i], v);
      endpoints.push_back(targets[i]);
      endpoints.push_back(v);
    }
  }
  return g;
}

// Erased configuration model: shuffle the stub list, pair consecutive stubs,
// drop self-loops and duplicates.
Graph configuration_model(const DegreeSequence& seq, std::uint64_t seed,
                          GenerationReport* report) {
  const std::uint32_t n = static_cast<std::uint32_t>(seq.degrees.size());
  std::vector<NodeId> stubs;
  for (NodeId u = 0; u < n; ++u)
    for (std::uint32_t i = 0; i < seq.degrees[u]; ++i) stubs.push_back(u);
  Rng rng(derive_seed(seed, seed_tag::graph, 1));
  rng.shuffle(stubs);
  Graph g(n);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(stubs.size());
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    const NodeId u = stubs[i], v = stubs[i + 1];
    if (u == v) {
      if (report) ++report->dropped_self_loops;
      continue;
    }
    if (!seen.insert(edge_key(u, v)).second) {
      if (report) ++report->dropped_multi_edges;
      continue;
    }
    g.add_edge(u, v);
  }
  return g;
}

}  // namespace

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::erdos_renyi: return "erdos_renyi";
    case GeneratorKind::preferential_attachment: return "preferential_attachment";
    case GeneratorKind::config_power_law: return "config_power_law";
    case GeneratorKind::config_exponential: return "config_exponential";
  }
  return "unknown";
}

std::optional<GeneratorKind> generator_kind_from_string(const std::string& s) {
  if (s == "erdos_renyi") return GeneratorKind::erdos_renyi;
  if (s == "preferential_attachment") return GeneratorKind::preferential_attachment;
  if (s == "config_power_law") return GeneratorKind::config_power_law;
  if (s == "config_exponential") return GeneratorKind::config_exponential;
  return std::nullopt;
}

void GeneratorSpec::validate() const {
  if (n < 2) throw std::invalid_argument("generator.n: must be >= 2");
  switch (kind) {
    case GeneratorKind::erdos_renyi:
      if (!(mean_degree > 0.0))
        throw std::invalid_argument("generator.mean_degree: must be > 0");
      break;
    case GeneratorKind::preferential_attachment:
      if (attach_m < 1) throw std::invalid_argument("generator.attach_m: must be >= 1");
      if (attach_m >= n) throw std::invalid_argument("generator.attach_m: must be < n");
      break;
    case GeneratorKind::config_power_law:
      if (!(gamma > 1.0)) throw std::invalid_argument("generator.gamma: must be > 1");
      if (k_min < 1) throw std::invalid_argument("generator.k_min: must be >= 1");
      if (k_min > k_max) throw std::invalid_argument("generator.k_min: exceeds k_max");
      if (k_max > n - 1) throw std::invalid_argument("generator.k_max: must be <= n-1");
      break;
    case GeneratorKind::config_exponential:
      if (k_min < 1) throw std::invalid_argument("generator.k_min: must be >= 1");
      if (k_min > k_max) throw std::invalid_argument("generator.k_min: exceeds k_max");
      if (k_max > n - 1) throw std::invalid_argument("generator.k_max: must be <= n-1");
      if (!(mean_degree > static_cast<double>(k_min)))
        throw std::invalid_argument("generator.mean_degree: must exceed k_min");
      break;
  }
}

Graph generate(const GeneratorSpec& spec, GenerationReport* report) {
  spec.validate();
  if (report) *report = {};
  switch (spec.kind) {
    case GeneratorKind::erdos_renyi:
      return erdos_renyi(spec.n, spec.mean_degree, spec.seed);
    case GeneratorKind::preferential_attachment:
      return preferential_attachment(spec.n, spec.attach_m, spec.seed);
    case GeneratorKind::config_power_law: {
      DegreeDistributionParams p;
      p.gamma = spec.gamma;
      p.k_min = spec.k_min;
      p.k_max = spec.k_max;
      const auto seq = sample_degree_sequence(DegreeDistribution::power_law, p, spec.n,
                                              derive_seed(spec.seed, seed_tag::graph, 0));
      if (report) report->parity_fix = seq.parity_fix;
      return configuration_model(seq, spec.seed, report);
    }
    case GeneratorKind::config_exponential: {
      DegreeDistributionParams p;
      p.mean_degree = spec.mean_degree;
      p.k_min = spec.k_min;
      p.k_max = spec.k_max;
      const auto seq = sample_degree_sequence(DegreeDistribution::exponential, p, spec.n,
                                              derive_seed(spec.seed, seed_tag::graph, 0));
      if (report) report->parity_fix = seq.parity_fix;
      return configuration_model(seq, spec.seed, report);
    }
  }
  throw std::logic_error("generate: unreachable");
}

Graph configuration_graph(const std::vector<std::uint32_t>& degrees,
                          std::uint64_t seed, GenerationReport* report) {
  if (report) *report = {};
  DegreeSequence seq;
  seq.degrees = degrees;
  return configuration_model(seq, seed, report);
}

}  // namespace resil
