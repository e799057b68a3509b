#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace resil {

struct SourceClaimNetwork {
  std::uint32_t n_sources = 0;
  std::uint32_t n_claims = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> assertions;

  void validate() const;
};

struct RankScores {
  std::vector<double> source;
  std::vector<double> claim;
  std::uint32_t iterations = 0;
};

// Mutual-recursion credibility scores: claim score = sum of its asserting
// sources' scores, source score = sum of its claims' scores, each side
// rescaled to max 1 every round.
RankScores iterative_rank(const SourceClaimNetwork& net, double tol = 1e-10,
                          std::uint32_t max_iter = 10000);

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 1.0;
  double level = 0.95;
  bool flagged = false;
};

struct CredibilityEstimate {
  std::vector<double> a;
  std::vector<double> b;
  double d = 0.5;
  std::vector<double> claim_posterior;
  double log_likelihood = 0.0;
  std::uint32_t iterations = 0;
  std::vector<char> degenerate_source;
  std::vector<ConfidenceInterval> ci_a;
  std::vector<ConfidenceInterval> ci_b;
  ConfidenceInterval ci_d;
  bool has_intervals = false;
};

struct EmOptions {
  double tol = 1e-8;
  std::uint32_t max_iter = 2000;
  std::optional<std::vector<double>> init_a;
  std::optional<std::vector<double>> init_b;
  std::optional<double> init_d;
};

// EM for the generative model: claim truth ~ Bernoulli(d); source i asserts a
// true claim with probability a_i, a false one with probability b_i. Default
// start is each source's assertion rate +0.1 for a and -0.1 for b, which pins
// the a > b labeling of the two symmetric optima. All probabilities are kept
// in [1e-6, 1 - 1e-6]; a source asserting everything or nothing is flagged.
CredibilityEstimate em_estimate(const SourceClaimNetwork& net,
                                const EmOptions& options = {});

// Adds per-parameter normal-approximation intervals from the observed Fisher
// information at the estimate, clipped to [0, 1]. Parameters whose variance
// is unavailable or vacuously wide are flagged.
CredibilityEstimate confidence_intervals(CredibilityEstimate est,
                                         const SourceClaimNetwork& net,
                                         double level);

struct SynthData {
  SourceClaimNetwork net;
  std::vector<char> truth;
};

SynthData synth_generate(std::uint32_t n_sources, std::uint32_t n_claims,
                         const std::vector<double>& a,
                         const std::vector<double>& b, double d,
                         std::uint64_t seed);

// Complements one source's assertion row, turning it anti-correlated with
// whatever signal it carried.
SourceClaimNetwork flip_source(const SourceClaimNetwork& net,
                               std::uint32_t source);

struct Classification {
  std::vector<char> claim_label;
  std::vector<double> discrimination;
  std::vector<std::uint32_t> source_ranking;
};

// Claims are true iff posterior >= threshold; sources rank by a_hat - b_hat.
Classification classify_and_rerank(const CredibilityEstimate& est,
                                   double threshold = 0.5);

double probit(double p);

// "source_id,claim_id" rows.
SourceClaimNetwork read_assertions_csv(std::istream& in);
void write_assertions_csv(std::ostream& out, const SourceClaimNetwork& net);
void write_source_estimates_csv(std::ostream& out,
                                const CredibilityEstimate& est);
void write_claim_posteriors_csv(std::ostream& out,
                                const CredibilityEstimate& est,
                                double threshold = 0.5);

}  // namespace resil
