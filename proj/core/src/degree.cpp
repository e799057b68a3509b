#include "resil/degree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "resil/rng.hpp"

namespace resil {

namespace {

void check_support(const DegreeDistributionParams& p) {
  if (p.k_min < 1) throw std::invalid_argument("degree distribution: k_min must be >= 1");
  if (p.k_min > p.k_max) throw std::invalid_argument("degree distribution: k_min > k_max");
}

std::vector<double> power_law_pmf(const DegreeDistributionParams& p) {
  check_support(p);
  if (!(p.gamma > 1.0)) throw std::invalid_argument("power law: gamma must be > 1");
  std::vector<double> pmf(p.k_max - p.k_min + 1);
  double z = 0.0;
  for (std::uint32_t k = p.k_min; k <= p.k_max; ++k) {
    pmf[k - p.k_min] = std::pow(static_cast<double>(k), -p.gamma);
    z += pmf[k - p.k_min];
  }
  for (double& x : pmf) x /= z;
  return pmf;
}

double exponential_mean_at_rate(const DegreeDistributionParams& p, double lambda) {
  double z = 0.0, m = 0.0;
  for (std::uint32_t k = p.k_min; k <= p.k_max; ++k) {
    const double w = std::exp(-static_cast<double>(k - p.k_min) / lambda);
    z += w;
    m += k * w;
  }
  return m / z;
}

std::vector<double> exponential_pmf(const DegreeDistributionParams& p) {
  check_support(p);
  // lambda -> 0 gives mean k_min, lambda -> inf gives the support midpoint;
  // the target mean must sit strictly between.
  const double mid = 0.5 * (p.k_min + p.k_max);
  if (!(p.mean_degree > p.k_min) || !(p.mean_degree < mid))
    throw std::invalid_argument(
        "exponential: mean degree must lie in (k_min, (k_min+k_max)/2)");
  double lo = 1e-6, hi = 1.0;
  while (exponential_mean_at_rate(p, hi) < p.mean_degree) {
    hi *= 2.0;
    if (hi > 1e12) throw std::runtime_error("exponential: rate solve diverged");
  }
  for (int i = 0; i < 200; ++i) {
    const double lambda = 0.5 * (lo + hi);
    (exponential_mean_at_rate(p, lambda) < p.mean_degree ? lo : hi) = lambda;
  }
  const double lambda = 0.5 * (lo + hi);
  std::vector<double> pmf(p.k_max - p.k_min + 1);
  double z = 0.0;
  for (std::uint32_t k = p.k_min; k <= p.k_max; ++k) {
    pmf[k - p.k_min] = std::exp(-static_cast<double>(k - p.k_min) / lambda);
    z += pmf[k - p.k_min];
  }
  for (double& x : pmf) x /= z;
  return pmf;
}

}  // namespace

std::vector<double> degree_pmf(DegreeDistribution kind, const DegreeDistributionParams& p) {
  return kind == DegreeDistribution::power_law ? power_law_pmf(p) : exponential_pmf(p);
}

double analytic_mean_degree(DegreeDistribution kind, const DegreeDistributionParams& p) {
  const auto pmf = degree_pmf(kind, p);
  double m = 0.0;
  for (std::uint32_t k = p.k_min; k <= p.k_max; ++k) m += k * pmf[k - p.k_min];
  return m;
}

DegreeSequence sample_degree_sequence(DegreeDistribution kind,
                                      const DegreeDistributionParams& params,
                                      std::uint32_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sample_degree_sequence: n must be >= 2");
  const auto pmf = degree_pmf(kind, params);
  DiscreteSampler sampler(pmf);
  Rng rng(seed);
  DegreeSequence seq;
  seq.degrees.resize(n);
  std::uint64_t sum = 0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t k = params.k_min + static_cast<std::uint32_t>(sampler.draw(rng));
    seq.degrees[i] = k;
    sum += k;
  }
  if (sum % 2 != 0) {
    const NodeId fix = static_cast<NodeId>(rng.index(n));
    seq.degrees[fix] += 1;
    seq.parity_fix = fix;
  }
  return seq;
}

DegreeStats degree_stats(const Graph& g) {
  double sk = 0.0, sk2 = 0.0;
  std::uint64_t count = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (!g.present(u)) continue;
    const double k = static_cast<double>(g.degree(u));
    sk += k;
    sk2 += k * k;
    ++count;
  }
  if (count == 0 || sk == 0.0)
    throw std::invalid_argument("degree_stats: graph has no edges");
  DegreeStats s;
  s.mean_k = sk / static_cast<double>(count);
  s.mean_k2 = sk2 / static_cast<double>(count);
  s.kappa = s.mean_k2 / s.mean_k;
  if (s.kappa <= 1.0) {
    s.f_c = 0.0;
  } else {
    s.f_c = std::clamp(1.0 - 1.0 / (s.kappa - 1.0), 0.0, 1.0);
  }
  return s;
}

}  // namespace resil
