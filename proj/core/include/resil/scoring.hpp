#pragma once

#include <cstddef>
#include <vector>

namespace resil {

struct ResilienceTrace {
  std::vector<double> performance;
  std::size_t disturbance_step = 0;
  std::size_t recovery_window = 0;

  void validate() const;
};

struct TraceScores {
  double robustness = 0.0;
  double resiliency = 0.0;
};

// Both scores are normalized by the pre-disturbance mean: robustness is the
// worst performance within the recovery window, resiliency the performance at
// its end, each clamped to [0, 1].
TraceScores score_trace(const ResilienceTrace& trace);

}  // namespace resil
