#include "filters.hpp"

#include <algorithm>
#include <deque>

namespace vexlab::detail {

void sliding_max_cyclic(std::span<const double> v, int k, std::span<double> out) {
  const int n = static_cast<int>(v.size());
  if (2 * k + 1 >= n) {
    const double m = *std::max_element(v.begin(), v.end());
    std::fill(out.begin(), out.end(), m);
    return;
  }
  std::deque<int> q;  // unwrapped positions in [i - k, i + k]
  auto at = [&](int j) { return v[((j % n) + n) % n]; };
  for (int j = -k; j < k; ++j) {
    while (!q.empty() && at(q.back()) <= at(j)) q.pop_back();
    q.push_back(j);
  }
  for (int i = 0; i < n; ++i) {
    const int j = i + k;
    while (!q.empty() && at(q.back()) <= at(j)) q.pop_back();
    q.push_back(j);
    while (q.front() < i - k) q.pop_front();
    out[i] = at(q.front());
  }
}

RowPattern disc_pattern(const Domain& d, double r) {
  const int n = d.points_per_axis();
  RowPattern p;
  p.half.assign(d.dim() == 1 ? 1 : n, -1);
  const int rows = d.dim() == 1 ? 1 : n;
  for (int oy = 0; oy < rows; ++oy) {
    // offsets along x are symmetric; find the largest |ox| <= n/2 inside
    int best = -1;
    for (int ox = 0; ox <= n / 2; ++ox) {
      if (offset_norm(d, ox, oy) < r || (ox == 0 && oy == 0)) best = ox;
      else break;
    }
    p.half[oy] = best;
    if (best >= 0) p.count += std::min<std::size_t>(2 * best + 1, n);
  }
  return p;
}

void pattern_max_into(const Domain& d, std::span<const double> v, const RowPattern& p, std::span<double> out) {
  const int n = d.points_per_axis();
  std::vector<double> rowmax(n);
  if (d.dim() == 1) {
    sliding_max_cyclic(v, p.half[0], rowmax);
    for (int i = 0; i < n; ++i) out[i] = std::max(out[i], rowmax[i]);
    return;
  }
  for (int oy = 0; oy < n; ++oy) {
    if (p.half[oy] < 0) continue;
    for (int y = 0; y < n; ++y) {
      const int src = (y + oy) % n;
      sliding_max_cyclic(v.subspan(std::size_t(src) * n, n), p.half[oy], rowmax);
      double* dst = out.data() + std::size_t(y) * n;
      for (int x = 0; x < n; ++x) dst[x] = std::max(dst[x], rowmax[x]);
    }
  }
}

std::vector<double> pattern_kernel(const Domain& d, const RowPattern& p) {
  const int n = d.points_per_axis();
  std::vector<double> k(d.size(), 0.0);
  const int rows = d.dim() == 1 ? 1 : n;
  for (int oy = 0; oy < rows; ++oy) {
    const int hw = p.half[oy];
    if (hw < 0) continue;
    for (int ox = -std::min(hw, n / 2); ox <= std::min(hw, n / 2); ++ox) k[d.index(ox, oy)] = 1.0;
  }
  return k;
}

}  // namespace vexlab::detail
