#include "vexlab/trend.hpp"

#include <cmath>

namespace vexlab {

TrendVerdict classify_trend(std::span<const double> values, const TrendThresholds& t) {
  if (values.size() < 3) return TrendVerdict::Inconclusive;
  for (double v : values)
    if (!std::isfinite(v)) return TrendVerdict::Growing;
  const std::size_t n = values.size();
  bool stable = true;
  bool growing = true;
  for (std::size_t i = n - 2; i < n; ++i) {
    const double prev = values[i - 1];
    const double cur = values[i];
    if (std::abs(prev) <= t.zero_abs) {
      if (std::abs(cur) > t.zero_abs) stable = false;
      growing = growing && std::abs(cur) > t.zero_abs;
      continue;
    }
    const double rel = (cur - prev) / std::abs(prev);
    if (std::abs(rel) >= t.stable_rel) stable = false;
    if (!(rel > t.growth_rel)) growing = false;
  }
  if (stable) return TrendVerdict::Stable;
  if (growing) return TrendVerdict::Growing;
  return TrendVerdict::Inconclusive;
}

std::string_view to_string(TrendVerdict v) {
  switch (v) {
    case TrendVerdict::Stable: return "stable";
    case TrendVerdict::Growing: return "growing";
    case TrendVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace vexlab
