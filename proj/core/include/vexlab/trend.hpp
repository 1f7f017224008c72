#pragma once

#include <span>
#include <string_view>

namespace vexlab {

// Thresholds for reading a refinement sequence of estimates. A sequence is
// stable when each of its last two increments is below stable_rel (relative),
// growing when each of its last two increments exceeds growth_rel.
struct TrendThresholds {
  double stable_rel = 0.10;
  double growth_rel = 0.25;
  // Values at or below this are treated as zero (a flat zero trend is stable).
  double zero_abs = 1e-12;
};

enum class TrendVerdict { Stable, Growing, Inconclusive };

TrendVerdict classify_trend(std::span<const double> values, const TrendThresholds& t = {});
std::string_view to_string(TrendVerdict v);

}  // namespace vexlab
