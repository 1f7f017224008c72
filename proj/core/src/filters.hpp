#pragma once

// Internal lattice filters shared by the maximal and square-function kernels.

#include <span>
#include <vector>

#include "vexlab/grid.hpp"

namespace vexlab::detail {

// out[i] = max(v[i - k .. i + k]) cyclically.
void sliding_max_cyclic(std::span<const double> v, int k, std::span<double> out);

// Symmetric lattice pattern stored as a half-width per row offset (-1: row
// absent). Rows are indexed by oy in [0, N) (minimum image), a single row in 1D.
struct RowPattern {
  std::vector<int> half;
  std::size_t count = 0;
};

// Offsets with minimum-image norm < r; offset 0 is always present.
RowPattern disc_pattern(const Domain& d, double r);

// out[x] = max(out[x], max over pattern offsets o of v[x + o]).
void pattern_max_into(const Domain& d, std::span<const double> v, const RowPattern& p, std::span<double> out);

// Indicator kernel of the pattern, indexed by lattice offset.
std::vector<double> pattern_kernel(const Domain& d, const RowPattern& p);

}  // namespace vexlab::detail
