#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace resil {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream tags keep seeds for different purposes decorrelated even when the
// same master seed reaches several modules.
namespace seed_tag {
inline constexpr std::uint64_t graph = 0x68706172'67ULL;
inline constexpr std::uint64_t removal = 0x6c61766f'6d6572ULL;
inline constexpr std::uint64_t cascade = 0x65646163'736163ULL;
inline constexpr std::uint64_t coupling = 0x6c70756f'63ULL;
inline constexpr std::uint64_t pool = 0x6c6f6f70ULL;
inline constexpr std::uint64_t sampling = 0x706d6173ULL;
inline constexpr std::uint64_t synth = 0x68746e79'73ULL;
inline constexpr std::uint64_t trial = 0x6c616972'74ULL;
}  // namespace seed_tag

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag,
                                 std::uint64_t index = 0) {
  return splitmix64(splitmix64(master ^ splitmix64(tag)) ^ index);
}

// Deterministic RNG is part of the output contract: every draw goes through
// these helpers so results are reproducible across platforms and stdlibs
// (std::shuffle and std::uniform_int_distribution are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t u64() { return engine_(); }

  // Unbiased integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be > 0");
    const std::uint64_t rem = std::numeric_limits<std::uint64_t>::max() % bound;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
    std::uint64_t x = engine_();
    while (x > limit) x = engine_();
    return x % bound;
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

  // Uniform in [0, 1) with 53 random bits.
  double real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return real() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct values from [0, n), in selection order.
  std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t k) {
    if (k > n) throw std::invalid_argument("Rng::sample: k > n");
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint32_t i = 0; i < k; ++i) {
      std::uint32_t j = i + static_cast<std::uint32_t>(index(n - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

// Cumulative-table sampler for draws proportional to fixed non-negative
// weights. At least one weight must be positive.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const std::vector<double>& weights) {
    cumulative_.reserve(weights.size());
    double total = 0.0;
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("DiscreteSampler: negative weight");
      total += w;
      cumulative_.push_back(total);
    }
    if (cumulative_.empty() || total <= 0.0)
      throw std::invalid_argument("DiscreteSampler: no positive weight");
  }

  std::size_t draw(Rng& rng) const {
    const double u = rng.real() * cumulative_.back();
    std::size_t lo = 0, hi = cumulative_.size() - 1;
    while (lo < hi) {
      std::size_t mid = (lo + hi) / 2;
      if (cumulative_[mid] <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace resil
