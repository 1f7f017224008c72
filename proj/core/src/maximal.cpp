#include "vexlab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "vexlab/fft.hpp"
#include "vexlab/parallel.hpp"
#include "filters.hpp"

namespace vexlab {

namespace {

using detail::sliding_max_cyclic;

// Every window of 1..W consecutive samples: averages by prefix sums, then
// each point takes the max over the windows of width w covering it, which is
// a sliding max of length w over window start positions.
void windows_1d(std::span<const double> a, int max_width, std::span<double> out) {
  const int n = static_cast<int>(a.size());
  std::vector<double> prefix(2 * n + 1, 0.0);
  for (int i = 0; i < 2 * n; ++i) prefix[i + 1] = prefix[i] + a[i % n];
  std::vector<double> avg(n);
  for (int w = 1; w <= max_width; ++w) {
    for (int s = 0; s < n; ++s) avg[s] = (prefix[s + w] - prefix[s]) / w;
    // point x is covered by starts s in [x - w + 1, x]
    std::deque<int> q;
    auto at = [&](int j) { return avg[((j % n) + n) % n]; };
    if (w >= n) {
      const double m = *std::max_element(avg.begin(), avg.end());
      for (int x = 0; x < n; ++x) out[x] = std::max(out[x], m);
      continue;
    }
    for (int j = -w + 1; j < 0; ++j) {
      while (!q.empty() && at(q.back()) <= at(j)) q.pop_back();
      q.push_back(j);
    }
    for (int x = 0; x < n; ++x) {
      while (!q.empty() && at(q.back()) <= at(x)) q.pop_back();
      q.push_back(x);
      while (q.front() < x - w + 1) q.pop_front();
      out[x] = std::max(out[x], at(q.front()));
    }
  }
}

// Lattice-centred balls of one radius: disc averages by FFT convolution,
// then a disc max-filter decomposed into row-wise sliding maxima.
void lattice_radius(const Domain& d, std::span<const double> a, double r, std::span<double> out) {
  const int n = d.points_per_axis();
  // Offset pattern of the ball around sample 0.
  const std::size_t origin = 0;
  const Point c0 = d.point(origin);
  const auto members = ball_members(d, {c0, r});
  if (members.empty()) throw Error("empty ball");
  std::vector<double> kernel(d.size(), 0.0);
  // half-width of the pattern for each row offset (-1 = row absent)
  std::vector<int> half(d.dim() == 1 ? 1 : n, -1);
  for (std::size_t m : members) {
    const int ox = static_cast<int>(m % n);
    const int oy = d.dim() == 1 ? 0 : static_cast<int>(m / n);
    // member at offset (ox, oy) from the centre; kernel for a[x - o] is at -o
    kernel[d.index(-ox, -oy)] = 1.0;
    const int dx = std::min(ox, n - ox);
    half[oy] = std::max(half[oy], dx);
  }
  std::vector<double> avg = circular_convolve(d, a, kernel);
  const double inv = 1.0 / static_cast<double>(members.size());
  for (double& v : avg) v *= inv;

  if (d.dim() == 1) {
    std::vector<double> m(n);
    sliding_max_cyclic(avg, half[0], m);
    for (int i = 0; i < n; ++i) out[i] = std::max(out[i], m[i]);
    return;
  }
  // A point y sees the centres y - o for members o; the pattern is symmetric
  // under o -> -o, so the max-filter uses the same rows.
  std::vector<double> rowmax(n);
  for (int oy = 0; oy < n; ++oy) {
    if (half[oy] < 0) continue;
    for (int y = 0; y < n; ++y) {
      const int src = ((y + oy) % n);
      std::span<const double> row(avg.data() + std::size_t(src) * n, n);
      sliding_max_cyclic(row, half[oy], rowmax);
      double* dst = out.data() + std::size_t(y) * n;
      for (int x = 0; x < n; ++x) dst[x] = std::max(dst[x], rowmax[x]);
    }
  }
}

}  // namespace

std::vector<double> hl_maximal(std::span<const double> a, const BallFamily& F) {
  const Domain& d = F.domain();
  if (a.size() != d.size()) throw Error("domain mismatch");
  std::vector<double> out(a.begin(), a.end());
  switch (F.kind()) {
    case BallFamily::Kind::Windows1D:
      windows_1d(a, F.max_window(), out);
      break;
    case BallFamily::Kind::Lattice:
      for (double r : F.lattice_radii()) lattice_radius(d, a, r, out);
      break;
    case BallFamily::Kind::Generic: {
      const auto balls = F.balls();
      std::vector<std::vector<std::size_t>> members(balls.size());
      std::vector<double> avg(balls.size());
      parallel_for(balls.size(), [&](std::size_t b) {
        members[b] = ball_members(d, balls[b]);
        if (members[b].empty()) throw Error("empty ball");
        double s = 0.0;
        for (std::size_t i : members[b]) s += a[i];
        avg[b] = s / static_cast<double>(members[b].size());
      });
      for (std::size_t b = 0; b < balls.size(); ++b)
        for (std::size_t i : members[b]) out[i] = std::max(out[i], avg[b]);
      break;
    }
  }
  return out;
}

GridFunction hl_maximal(const GridFunction& f, const BallFamily& F) {
  if (!(f.domain() == F.domain())) throw Error("domain mismatch");
  const auto m = hl_maximal(f.abs(), F);
  return GridFunction(f.domain(), std::span<const double>(m));
}

GridFunction powered_maximal(const GridFunction& f, double theta, const BallFamily& F) {
  if (!(theta > 0.0)) throw Error("theta must be positive");
  std::vector<double> a = f.abs();
  for (double& v : a) v = std::pow(v, theta);
  std::vector<double> m = hl_maximal(a, F);
  for (double& v : m) v = std::pow(v, 1.0 / theta);
  return GridFunction(f.domain(), std::span<const double>(m));
}

double fs_vector_probe(const std::vector<GridFunction>& fs, double q, const SpaceSpec& s, double r,
                       const BallFamily& F) {
  if (fs.empty()) throw Error("empty function family");
  if (!(q > 1.0)) throw Error("q must exceed 1");
  if (!(r > 0.0)) throw Error("r must be positive");
  const std::size_t n = F.domain().size();
  std::vector<double> lhs(n, 0.0), rhs(n, 0.0);
  for (const GridFunction& f : fs) {
    const auto a = f.abs();
    const auto m = hl_maximal(a, F);
    for (std::size_t i = 0; i < n; ++i) {
      lhs[i] += std::pow(m[i], q);
      rhs[i] += std::pow(a[i], q);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    lhs[i] = std::pow(lhs[i], 1.0 / q);
    rhs[i] = std::pow(rhs[i], 1.0 / q);
  }
  const double den = convexified_norm(rhs, s, r);
  if (den == 0.0) return 0.0;
  return convexified_norm(lhs, s, r) / den;
}

std::vector<double> OperatorNormEstimate::trend_values() const {
  std::vector<double> v;
  for (const auto& [size, value] : trend) v.push_back(value);
  return v;
}

OperatorNormEstimate estimate_from_ratios(std::span<const double> ratios,
                                          std::span<const std::size_t> prefix_sizes) {
  OperatorNormEstimate est;
  double best = -1.0;
  std::size_t p = 0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (std::isnan(ratios[i])) {
      ++est.skipped;
      est.warnings.push_back("entry " + std::to_string(i) + " has zero norm; skipped");
    } else if (ratios[i] > best) {
      best = ratios[i];
      est.argmax_entry = i;
    }
    while (p < prefix_sizes.size() && prefix_sizes[p] == i + 1) {
      est.trend.emplace_back(i + 1, std::max(best, 0.0));
      ++p;
    }
  }
  est.value = std::max(best, 0.0);
  return est;
}

OperatorNormEstimate operator_norm_estimate(const Operator& T, const NormFunction& norm,
                                            const Dictionary& D) {
  std::vector<double> ratios(D.size());
  parallel_for(D.size(), [&](std::size_t i) {
    const double den = norm(D[i]);
    ratios[i] = den == 0.0 ? std::numeric_limits<double>::quiet_NaN() : norm(T(D[i])) / den;
  });
  return estimate_from_ratios(ratios, D.prefix_sizes());
}

OperatorNormEstimate operator_norm_estimate(const Operator& T, const SpaceSpec& s, const Dictionary& D) {
  return operator_norm_estimate(T, [&s](const GridFunction& g) { return weighted_norm(g, s); }, D);
}

}  // namespace vexlab
