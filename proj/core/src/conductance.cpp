#include "resil/conductance.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "resil/metrics.hpp"

namespace resil {

namespace {
constexpr std::uint32_t kNoIndex = 0xffffffffu;
}

double effective_conductance(const Graph& g, NodeId s, NodeId t,
                             double tolerance) {
  if (s >= g.node_count() || !g.present(s) || t >= g.node_count() || !g.present(t))
    throw std::invalid_argument("conductance terminals must be present nodes");
  if (s == t) throw std::invalid_argument("conductance terminals must differ");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const Components comps = connected_components(g);
  if (comps.label[s] != comps.label[t]) return 0.0;
  const std::int32_t comp = comps.label[s];

  // Compact the s-t component, dropping the grounded terminal t.
  std::vector<std::uint32_t> index(g.node_count(), kNoIndex);
  std::vector<NodeId> nodes;
  for (NodeId u : g.present_nodes()) {
    if (comps.label[u] != comp || u == t) continue;
    index[u] = static_cast<std::uint32_t>(nodes.size());
    nodes.push_back(u);
  }
  const std::size_t n = nodes.size();

  std::vector<double> diag(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const Graph::Adj& a : g.neighbors(nodes[i]))
      diag[i] += g.weighted() ? g.weight(a.edge) : 1.0;
  }

  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = diag[i] * x[i];
      for (const Graph::Adj& a : g.neighbors(nodes[i])) {
        const std::uint32_t j = index[a.to];
        if (j == kNoIndex) continue;
        acc -= (g.weighted() ? g.weight(a.edge) : 1.0) * x[j];
      }
      y[i] = acc;
    }
  };

  std::vector<double> x(n, 0.0), r(n, 0.0), z(n, 0.0), p(n, 0.0), q(n, 0.0);
  r[index[s]] = 1.0;
  const double b_norm = 1.0;

  for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = z[index[s]];

  const std::size_t max_iter = 20 * n + 100;
  bool converged = false;
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    double r_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) r_norm += r[i] * r[i];
    if (std::sqrt(r_norm) <= tolerance * b_norm) {
      converged = true;
      break;
    }
    apply(p, q);
    double pq = 0.0;
    for (std::size_t i = 0; i < n; ++i) pq += p[i] * q[i];
    if (!(pq > 0.0)) throw std::runtime_error("conductance solve broke down");
    const double alpha = rz / pq;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
    }
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    double rz_next = 0.0;
    for (std::size_t i = 0; i < n; ++i) rz_next += r[i] * z[i];
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  if (!converged) throw std::runtime_error("conductance solve did not converge");

  const double v = x[index[s]];
  if (!(v > 0.0)) throw std::runtime_error("conductance solve produced a non-positive voltage");
  return 1.0 / v;
}

}  // namespace resil
