#include "resil/truth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "resil/rng.hpp"

namespace resil {

namespace {

constexpr double kEps = 1e-6;

double clamp_prob(double x) { return std::min(std::max(x, kEps), 1.0 - kEps); }

std::vector<std::vector<std::uint32_t>> claim_adjacency(
    const SourceClaimNetwork& net) {
  std::vector<std::vector<std::uint32_t>> by_claim(net.n_claims);
  for (const auto& [s, c] : net.assertions) by_claim[c].push_back(s);
  return by_claim;
}

}  // namespace

void SourceClaimNetwork::validate() const {
  if (n_sources == 0) throw std::invalid_argument("net.n_sources: must be >= 1");
  if (n_claims == 0) throw std::invalid_argument("net.n_claims: must be >= 1");
  for (const auto& [s, c] : assertions) {
    if (s >= n_sources)
      throw std::invalid_argument("net.assertions: source index out of range");
    if (c >= n_claims)
      throw std::invalid_argument("net.assertions: claim index out of range");
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> copy = assertions;
  std::sort(copy.begin(), copy.end());
  if (std::adjacent_find(copy.begin(), copy.end()) != copy.end())
    throw std::invalid_argument("net.assertions: duplicate assertion");
}

RankScores iterative_rank(const SourceClaimNetwork& net, double tol,
                          std::uint32_t max_iter) {
  net.validate();
  if (net.assertions.empty())
    throw std::invalid_argument("net.assertions: must be non-empty");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (max_iter == 0) throw std::invalid_argument("max_iter must be >= 1");

  const auto by_claim = claim_adjacency(net);
  std::vector<std::vector<std::uint32_t>> by_source(net.n_sources);
  for (const auto& [s, c] : net.assertions) by_source[s].push_back(c);

  RankScores scores;
  scores.source.assign(net.n_sources, 1.0);
  scores.claim.assign(net.n_claims, 0.0);
  for (std::uint32_t iter = 1; iter <= max_iter; ++iter) {
    std::vector<double> claim_next(net.n_claims, 0.0);
    for (std::uint32_t j = 0; j < net.n_claims; ++j)
      for (std::uint32_t i : by_claim[j]) claim_next[j] += scores.source[i];
    const double claim_max = *std::max_element(claim_next.begin(), claim_next.end());
    for (double& x : claim_next) x /= claim_max;

    std::vector<double> source_next(net.n_sources, 0.0);
    for (std::uint32_t i = 0; i < net.n_sources; ++i)
      for (std::uint32_t j : by_source[i]) source_next[i] += claim_next[j];
    const double source_max =
        *std::max_element(source_next.begin(), source_next.end());
    for (double& x : source_next) x /= source_max;

    double delta = 0.0;
    for (std::uint32_t j = 0; j < net.n_claims; ++j)
      delta = std::max(delta, std::abs(claim_next[j] - scores.claim[j]));
    for (std::uint32_t i = 0; i < net.n_sources; ++i)
      delta = std::max(delta, std::abs(source_next[i] - scores.source[i]));
    scores.claim = std::move(claim_next);
    scores.source = std::move(source_next);
    scores.iterations = iter;
    if (delta < tol) break;
  }
  return scores;
}

CredibilityEstimate em_estimate(const SourceClaimNetwork& net,
                                const EmOptions& options) {
  net.validate();
  if (net.n_sources < 2)
    throw std::invalid_argument("net.n_sources: estimation needs >= 2 sources");
  if (net.n_claims < 2)
    throw std::invalid_argument("net.n_claims: estimation needs >= 2 claims");
  if (!(options.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (options.max_iter == 0) throw std::invalid_argument("max_iter must be >= 1");

  const std::uint32_t S = net.n_sources, C = net.n_claims;
  const auto by_claim = claim_adjacency(net);
  std::vector<std::uint32_t> assert_count(S, 0);
  for (const auto& [s, c] : net.assertions) ++assert_count[s];

  CredibilityEstimate est;
  est.a.resize(S);
  est.b.resize(S);
  est.degenerate_source.assign(S, 0);
  for (std::uint32_t i = 0; i < S; ++i) {
    const double rate = static_cast<double>(assert_count[i]) / C;
    est.a[i] = clamp_prob(rate + 0.1);
    est.b[i] = clamp_prob(rate - 0.1);
    est.degenerate_source[i] = assert_count[i] == 0 || assert_count[i] == C;
  }
  est.d = 0.5;
  if (options.init_a) {
    if (options.init_a->size() != S)
      throw std::invalid_argument("init_a must have one entry per source");
    for (std::uint32_t i = 0; i < S; ++i) est.a[i] = clamp_prob((*options.init_a)[i]);
  }
  if (options.init_b) {
    if (options.init_b->size() != S)
      throw std::invalid_argument("init_b must have one entry per source");
    for (std::uint32_t i = 0; i < S; ++i) est.b[i] = clamp_prob((*options.init_b)[i]);
  }
  if (options.init_d) est.d = clamp_prob(*options.init_d);

  est.claim_posterior.assign(C, est.d);
  double prev_ll = -std::numeric_limits<double>::infinity();
  std::vector<double> log_a(S), log_1a(S), log_b(S), log_1b(S);
  for (std::uint32_t iter = 1; iter <= options.max_iter; ++iter) {
    for (std::uint32_t i = 0; i < S; ++i) {
      log_a[i] = std::log(est.a[i]);
      log_1a[i] = std::log(1.0 - est.a[i]);
      log_b[i] = std::log(est.b[i]);
      log_1b[i] = std::log(1.0 - est.b[i]);
    }
    double base_true = 0.0, base_false = 0.0;
    for (std::uint32_t i = 0; i < S; ++i) {
      base_true += log_1a[i];
      base_false += log_1b[i];
    }

    double ll = 0.0;
    for (std::uint32_t j = 0; j < C; ++j) {
      double u = std::log(est.d) + base_true;
      double v = std::log(1.0 - est.d) + base_false;
      for (std::uint32_t i : by_claim[j]) {
        u += log_a[i] - log_1a[i];
        v += log_b[i] - log_1b[i];
      }
      const double m = std::max(u, v);
      ll += m + std::log(std::exp(u - m) + std::exp(v - m));
      est.claim_posterior[j] = 1.0 / (1.0 + std::exp(v - u));
    }
    est.log_likelihood = ll;
    est.iterations = iter;
    if (iter > 1) {
      if (ll < prev_ll - 1e-9)
        throw std::runtime_error("likelihood decreased during estimation");
      if (std::abs(ll - prev_ll) < options.tol) break;
    }
    prev_ll = ll;
    if (iter == options.max_iter) break;

    double sum_p = 0.0;
    for (std::uint32_t j = 0; j < C; ++j) sum_p += est.claim_posterior[j];
    std::vector<double> assert_p(S, 0.0);
    for (const auto& [s, c] : net.assertions) assert_p[s] += est.claim_posterior[c];
    for (std::uint32_t i = 0; i < S; ++i) {
      est.a[i] = clamp_prob(assert_p[i] / sum_p);
      est.b[i] = clamp_prob((static_cast<double>(assert_count[i]) - assert_p[i]) /
                            (static_cast<double>(C) - sum_p));
    }
    est.d = clamp_prob(sum_p / C);
  }
  return est;
}

double probit(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("probit argument must be in (0, 1)");
  static const double A[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double B[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double Cc[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double D[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425, p_high = 1.0 - p_low;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((Cc[0] * q + Cc[1]) * q + Cc[2]) * q + Cc[3]) * q + Cc[4]) * q + Cc[5]) /
        ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
  } else if (p <= p_high) {
    const double q = p - 0.5, r = q * q;
    x = (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q /
        (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((Cc[0] * q + Cc[1]) * q + Cc[2]) * q + Cc[3]) * q + Cc[4]) * q + Cc[5]) /
        ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0);
  }
  return x;
}

namespace {

// Gauss-Jordan inverse; returns false on a singular pivot.
bool invert(std::vector<double>& m, std::size_t n) {
  std::vector<double> inv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) pivot = r;
    if (std::abs(m[pivot * n + col]) < 1e-12) return false;
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(m[pivot * n + k], m[col * n + k]);
        std::swap(inv[pivot * n + k], inv[col * n + k]);
      }
    }
    const double scale = 1.0 / m[col * n + col];
    for (std::size_t k = 0; k < n; ++k) {
      m[col * n + k] *= scale;
      inv[col * n + k] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = m[r * n + col];
      if (factor == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        m[r * n + k] -= factor * m[col * n + k];
        inv[r * n + k] -= factor * inv[col * n + k];
      }
    }
  }
  m = std::move(inv);
  return true;
}

ConfidenceInterval interval_from_variance(double center, double var, double z,
                                          double level) {
  ConfidenceInterval ci;
  ci.level = level;
  if (!(var > 0.0) || !std::isfinite(var)) {
    ci.flagged = true;
    return ci;
  }
  const double half = z * std::sqrt(var);
  ci.lower = std::max(0.0, center - half);
  ci.upper = std::min(1.0, center + half);
  ci.flagged = half >= 0.5;
  return ci;
}

}  // namespace

CredibilityEstimate confidence_intervals(CredibilityEstimate est,
                                         const SourceClaimNetwork& net,
                                         double level) {
  net.validate();
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("level must be in (0, 1)");
  const std::uint32_t S = net.n_sources, C = net.n_claims;
  if (est.a.size() != S || est.b.size() != S || est.claim_posterior.size() != C)
    throw std::invalid_argument("estimate does not match the network shape");

  const std::size_t dim = 2 * static_cast<std::size_t>(S) + 1;
  std::vector<double> info(dim * dim, 0.0);
  std::vector<double> s_vec(dim, 0.0);
  std::vector<char> asserted(S, 0);
  const auto by_claim = claim_adjacency(net);
  const double dd = est.d * (1.0 - est.d);

  for (std::uint32_t j = 0; j < C; ++j) {
    for (std::uint32_t i : by_claim[j]) asserted[i] = 1;
    const double p = est.claim_posterior[j];
    for (std::uint32_t i = 0; i < S; ++i) {
      const double a = est.a[i], b = est.b[i];
      if (asserted[i]) {
        s_vec[i] = 1.0 / a;
        s_vec[S + i] = -1.0 / b;
        info[i * dim + i] += p / (a * a);
        info[(S + i) * dim + (S + i)] += (1.0 - p) / (b * b);
      } else {
        s_vec[i] = -1.0 / (1.0 - a);
        s_vec[S + i] = 1.0 / (1.0 - b);
        info[i * dim + i] += p / ((1.0 - a) * (1.0 - a));
        info[(S + i) * dim + (S + i)] += (1.0 - p) / ((1.0 - b) * (1.0 - b));
      }
    }
    s_vec[2 * S] = 1.0 / dd;
    info[(dim - 1) * dim + (dim - 1)] +=
        p / (est.d * est.d) + (1.0 - p) / ((1.0 - est.d) * (1.0 - est.d));
    const double w = p * (1.0 - p);
    for (std::size_t r = 0; r < dim; ++r) {
      const double wr = w * s_vec[r];
      for (std::size_t c = 0; c < dim; ++c) info[r * dim + c] -= wr * s_vec[c];
    }
    for (std::uint32_t i : by_claim[j]) asserted[i] = 0;
  }

  const double z = probit(0.5 * (1.0 + level));
  est.ci_a.assign(S, ConfidenceInterval{0.0, 1.0, level, true});
  est.ci_b.assign(S, ConfidenceInterval{0.0, 1.0, level, true});
  est.ci_d = ConfidenceInterval{0.0, 1.0, level, true};
  if (invert(info, dim)) {
    for (std::uint32_t i = 0; i < S; ++i) {
      est.ci_a[i] = interval_from_variance(est.a[i], info[i * dim + i], z, level);
      est.ci_b[i] = interval_from_variance(
          est.b[i], info[(S + i) * dim + (S + i)], z, level);
    }
    est.ci_d = interval_from_variance(est.d, info[(dim - 1) * dim + (dim - 1)],
                                      z, level);
  }
  est.has_intervals = true;
  return est;
}

SynthData synth_generate(std::uint32_t n_sources, std::uint32_t n_claims,
                         const std::vector<double>& a,
                         const std::vector<double>& b, double d,
                         std::uint64_t seed) {
  if (n_sources == 0) throw std::invalid_argument("n_sources must be >= 1");
  if (n_claims == 0) throw std::invalid_argument("n_claims must be >= 1");
  if (a.size() != n_sources || b.size() != n_sources)
    throw std::invalid_argument("a and b must have one entry per source");
  for (double x : a)
    if (!(x > 0.0 && x < 1.0))
      throw std::invalid_argument("a entries must be in (0, 1)");
  for (double x : b)
    if (!(x > 0.0 && x < 1.0))
      throw std::invalid_argument("b entries must be in (0, 1)");
  if (!(d >= 0.0 && d <= 1.0)) throw std::invalid_argument("d must be in [0, 1]");

  Rng rng(derive_seed(seed, seed_tag::synth));
  SynthData data;
  data.net.n_sources = n_sources;
  data.net.n_claims = n_claims;
  data.truth.resize(n_claims);
  for (std::uint32_t j = 0; j < n_claims; ++j) data.truth[j] = rng.bernoulli(d);
  for (std::uint32_t i = 0; i < n_sources; ++i)
    for (std::uint32_t j = 0; j < n_claims; ++j)
      if (rng.bernoulli(data.truth[j] ? a[i] : b[i]))
        data.net.assertions.emplace_back(i, j);
  return data;
}

SourceClaimNetwork flip_source(const SourceClaimNetwork& net,
                               std::uint32_t source) {
  net.validate();
  if (source >= net.n_sources)
    throw std::invalid_argument("source index out of range");
  std::vector<char> mat(static_cast<std::size_t>(net.n_sources) * net.n_claims, 0);
  for (const auto& [s, c] : net.assertions)
    mat[static_cast<std::size_t>(s) * net.n_claims + c] = 1;
  for (std::uint32_t j = 0; j < net.n_claims; ++j) {
    char& x = mat[static_cast<std::size_t>(source) * net.n_claims + j];
    x = !x;
  }
  SourceClaimNetwork out;
  out.n_sources = net.n_sources;
  out.n_claims = net.n_claims;
  for (std::uint32_t i = 0; i < net.n_sources; ++i)
    for (std::uint32_t j = 0; j < net.n_claims; ++j)
      if (mat[static_cast<std::size_t>(i) * net.n_claims + j])
        out.assertions.emplace_back(i, j);
  return out;
}

Classification classify_and_rerank(const CredibilityEstimate& est,
                                   double threshold) {
  if (est.a.empty() || est.a.size() != est.b.size())
    throw std::invalid_argument("estimate has no source parameters");
  Classification result;
  result.claim_label.resize(est.claim_posterior.size());
  for (std::size_t j = 0; j < est.claim_posterior.size(); ++j)
    result.claim_label[j] = est.claim_posterior[j] >= threshold;
  result.discrimination.resize(est.a.size());
  for (std::size_t i = 0; i < est.a.size(); ++i)
    result.discrimination[i] = est.a[i] - est.b[i];
  result.source_ranking.resize(est.a.size());
  for (std::size_t i = 0; i < est.a.size(); ++i)
    result.source_ranking[i] = static_cast<std::uint32_t>(i);
  std::stable_sort(result.source_ranking.begin(), result.source_ranking.end(),
                   [&](std::uint32_t x, std::uint32_t y) {
                     return result.discrimination[x] > result.discrimination[y];
                   });
  return result;
}

SourceClaimNetwork read_assertions_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("assertions CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "source_id,claim_id")
    throw std::invalid_argument(
        "assertions CSV must start with header \"source_id,claim_id\"");
  SourceClaimNetwork net;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("assertions CSV line " +
                                  std::to_string(line_no) + ": expected two columns");
    try {
      std::size_t used = 0;
      const unsigned long s = std::stoul(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("trailing characters");
      const std::string rest = line.substr(comma + 1);
      const unsigned long c = std::stoul(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("trailing characters");
      net.assertions.emplace_back(static_cast<std::uint32_t>(s),
                                  static_cast<std::uint32_t>(c));
      net.n_sources = std::max<std::uint32_t>(net.n_sources, s + 1);
      net.n_claims = std::max<std::uint32_t>(net.n_claims, c + 1);
    } catch (const std::exception&) {
      throw std::invalid_argument("assertions CSV line " +
                                  std::to_string(line_no) + ": invalid ids");
    }
  }
  net.validate();
  return net;
}

void write_assertions_csv(std::ostream& out, const SourceClaimNetwork& net) {
  out << "source_id,claim_id\n";
  for (const auto& [s, c] : net.assertions) out << s << ',' << c << '\n';
}

void write_source_estimates_csv(std::ostream& out,
                                const CredibilityEstimate& est) {
  out << "source_id,a_hat,b_hat,ci_low,ci_high\n";
  char buf[200];
  for (std::size_t i = 0; i < est.a.size(); ++i) {
    const double lo = est.has_intervals ? est.ci_a[i].lower : 0.0;
    const double hi = est.has_intervals ? est.ci_a[i].upper : 1.0;
    std::snprintf(buf, sizeof(buf), "%zu,%.10g,%.10g,%.10g,%.10g", i, est.a[i],
                  est.b[i], lo, hi);
    out << buf << '\n';
  }
}

void write_claim_posteriors_csv(std::ostream& out,
                                const CredibilityEstimate& est,
                                double threshold) {
  out << "claim_id,posterior_true,label\n";
  char buf[160];
  for (std::size_t j = 0; j < est.claim_posterior.size(); ++j) {
    std::snprintf(buf, sizeof(buf), "%zu,%.10g,%d", j, est.claim_posterior[j],
                  est.claim_posterior[j] >= threshold ? 1 : 0);
    out << buf << '\n';
  }
}

}  // namespace resil
