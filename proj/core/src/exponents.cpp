#include "vexlab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vexlab {

ExponentField::ExponentField(const Domain& d, std::vector<double> values)
    : domain_(d), values_(std::move(values)) {
  if (values_.size() != d.size()) throw Error("value count does not match domain");
  p_minus_ = *std::min_element(values_.begin(), values_.end());
  p_plus_ = *std::max_element(values_.begin(), values_.end());
  if (!(p_minus_ > 0.0) || !std::isfinite(p_plus_))
    throw Error("exponent must satisfy 0 < p_- <= p_+ < inf");
}

ExponentField ExponentField::constant(const Domain& d, double p) {
  return ExponentField(d, std::vector<double>(d.size(), p));
}

ExponentField ExponentField::sample(const Domain& d, const std::function<double(const Point&)>& p) {
  std::vector<double> v(d.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = p(d.point(i));
  return ExponentField(d, std::move(v));
}

ExponentField conjugate(const ExponentField& p) {
  if (!(p.p_minus() > 1.0)) throw Error("conjugate requires p₋ > 1");
  std::vector<double> v(p.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = p[i] / (p[i] - 1.0);
  return ExponentField(p.domain(), std::move(v));
}

ExponentField scale(const ExponentField& p, double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw Error("scale factor must be positive");
  std::vector<double> v(p.values().begin(), p.values().end());
  for (double& x : v) x *= theta;
  return ExponentField(p.domain(), std::move(v));
}

namespace {

constexpr std::size_t kMaxAllPairsPoints = 2048;
constexpr int kNeighbourReach = 4;

double sup_norm(const Point& x, int dim) {
  return dim == 1 ? std::abs(x[0]) : std::max(std::abs(x[0]), std::abs(x[1]));
}

double origin_distance(const Domain& d, const Point& x) {
  return periodic_distance(d, x, {0.0, 0.0});
}

}  // namespace

LogHolderDiagnostic log_holder_diagnostic(const ExponentField& p, int refinements,
                                          std::optional<double> p_infty_override) {
  if (refinements < 1) throw Error("refinements must be >= 1");
  const Domain& d = p.domain();
  const int n = d.points_per_axis();
  const int dim = d.dim();

  LogHolderDiagnostic out;
  if (p_infty_override) {
    out.p_infty_fit = *p_infty_override;
  } else {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (sup_norm(d.point(i), dim) > 0.9 * d.half_width()) {
        sum += p[i];
        ++count;
      }
    out.p_infty_fit = count ? sum / count : p[0];
  }

  auto pair_term = [&](std::size_t a, std::size_t b) {
    const double dist = periodic_distance(d, d.point(a), d.point(b));
    if (dist <= 0.0) return 0.0;
    return std::abs(p[a] - p[b]) * std::log(std::numbers::e + 1.0 / dist);
  };

  double c_log = 0.0;
  double c_inf = 0.0;
  for (int level = 1; level <= refinements; ++level) {
    const int stride = std::min(n, 1 << std::min(refinements - level, 30));
    const int per_axis = (n + stride - 1) / stride;
    auto lattice_index = [&](int i, int j) { return d.index(i * stride, j * stride); };
    const int rows = dim == 1 ? 1 : per_axis;

    // All pairs on a sub-lattice capped at kMaxAllPairsPoints points.
    int sub = 1;
    auto sub_points = [&](int s) {
      const std::size_t a = (per_axis + s - 1) / s;
      return dim == 1 ? a : a * a;
    };
    while (sub_points(sub) > kMaxAllPairsPoints) sub *= 2;
    std::vector<std::size_t> coarse;
    for (int j = 0; j < rows; j += (dim == 1 ? 1 : sub))
      for (int i = 0; i < per_axis; i += sub) coarse.push_back(lattice_index(i, j));
    for (std::size_t a = 0; a < coarse.size(); ++a)
      for (std::size_t b = a + 1; b < coarse.size(); ++b)
        c_log = std::max(c_log, pair_term(coarse[a], coarse[b]));

    // Short-range pairs on the level lattice.
    for (int j = 0; j < rows; ++j)
      for (int i = 0; i < per_axis; ++i) {
        const std::size_t a = lattice_index(i, j);
        for (int oy = (dim == 1 ? 0 : -kNeighbourReach); oy <= (dim == 1 ? 0 : kNeighbourReach); ++oy)
          for (int ox = 0; ox <= kNeighbourReach; ++ox) {
            if (ox == 0 && oy <= 0) continue;
            c_log = std::max(c_log, pair_term(a, lattice_index(i + ox, j + oy)));
          }
        const double r = origin_distance(d, d.point(a));
        c_inf = std::max(c_inf, std::abs(p[a] - out.p_infty_fit) * std::log(std::numbers::e + r));
      }

    out.trend.emplace_back(stride * d.spacing(), std::max(c_log, c_inf));
  }
  out.c_log_estimate = c_log;
  out.c_infty_estimate = c_inf;
  return out;
}

namespace exponent_forms {

ExponentField affine_radial(const Domain& d, double a, double b) {
  return ExponentField::sample(d, [&](const Point& x) {
    return a + b * periodic_distance(d, x, {0.0, 0.0}) / d.half_width();
  });
}

ExponentField sin_perturbed(const Domain& d, double base, double amplitude, double frequency) {
  return ExponentField::sample(d, [&](const Point& x) {
    double s = 0.0;
    for (int k = 0; k < d.dim(); ++k) {
      const double v = std::sin(std::numbers::pi * frequency * x[k] / d.half_width());
      s += v * v;
    }
    return base + amplitude * s / d.dim();
  });
}

ExponentField gaussian_bump(const Domain& d, double base, double amplitude) {
  return ExponentField::sample(d, [&](const Point& x) {
    return base + amplitude * std::exp(-(x[0] * x[0] + x[1] * x[1]));
  });
}

double spike_profile(double x, double p_infty, int k_max) {
  double phi = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    const double gap = std::abs(std::exp(double(k) * k) - x);
    if (gap <= 1.0 / k) phi = std::max(phi, 1.0 / k - gap);
  }
  return p_infty + phi;
}

ExponentField spike(const Domain& d, double p_infty, int k_max) {
  return ExponentField::sample(d, [&](const Point& x) { return spike_profile(x[0], p_infty, k_max); });
}

}  // namespace exponent_forms

}  // namespace vexlab
