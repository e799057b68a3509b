#include "resil/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace resil {

void ResilienceTrace::validate() const {
  if (performance.empty())
    throw std::invalid_argument("trace.performance: must be non-empty");
  for (double x : performance)
    if (!(x >= 0.0) || !std::isfinite(x))
      throw std::invalid_argument("trace.performance: values must be finite and >= 0");
  if (disturbance_step >= performance.size())
    throw std::invalid_argument("trace.disturbance_step: out of range");
  if (disturbance_step + recovery_window >= performance.size())
    throw std::invalid_argument("trace.recovery_window: extends past the trace");
}

TraceScores score_trace(const ResilienceTrace& trace) {
  trace.validate();
  if (trace.disturbance_step == 0)
    throw std::invalid_argument("trace has no pre-disturbance baseline");
  double baseline = 0.0;
  for (std::size_t t = 0; t < trace.disturbance_step; ++t)
    baseline += trace.performance[t];
  baseline /= static_cast<double>(trace.disturbance_step);
  if (!(baseline > 0.0))
    throw std::invalid_argument("trace baseline performance is zero");

  const std::size_t end = trace.disturbance_step + trace.recovery_window;
  double low = trace.performance[trace.disturbance_step];
  for (std::size_t t = trace.disturbance_step; t <= end; ++t)
    low = std::min(low, trace.performance[t]);

  auto clamp01 = [](double x) { return std::min(std::max(x, 0.0), 1.0); };
  return TraceScores{clamp01(low / baseline),
                     clamp01(trace.performance[end] / baseline)};
}

}  // namespace resil
