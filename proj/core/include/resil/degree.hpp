#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "resil/graph.hpp"

namespace resil {

struct DegreeSequence {
  std::vector<std::uint32_t> degrees;
  // Node whose degree was bumped by one to make the stub count even, if any.
  std::optional<NodeId> parity_fix;
};

enum class DegreeDistribution { power_law, exponential };

struct DegreeDistributionParams {
  double gamma = 0.0;        // power law exponent, > 1
  double mean_degree = 0.0;  // exponential target mean
  std::uint32_t k_min = 1;
  std::uint32_t k_max = 0;
};

// Per-degree probabilities of the discrete truncated distribution on
// [k_min, k_max]; index 0 corresponds to k_min.
std::vector<double> degree_pmf(DegreeDistribution kind, const DegreeDistributionParams& params);

double analytic_mean_degree(DegreeDistribution kind, const DegreeDistributionParams& params);

DegreeSequence sample_degree_sequence(DegreeDistribution kind,
                                      const DegreeDistributionParams& params,
                                      std::uint32_t n, std::uint64_t seed);

struct DegreeStats {
  double mean_k = 0.0;
  double mean_k2 = 0.0;
  double kappa = 0.0;  // mean_k2 / mean_k
  double f_c = 0.0;    // analytic random-removal percolation threshold
};

// Exact moments of the realized degree sequence over present nodes.
// f_c = 1 - 1/(kappa - 1), clamped to [0, 1]; kappa <= 1 reports 0.
// Throws on an edgeless graph (kappa undefined).
DegreeStats degree_stats(const Graph& g);

}  // namespace resil
