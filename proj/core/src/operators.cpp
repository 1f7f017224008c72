#include "vexlab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vexlab/fft.hpp"
#include "vexlab/parallel.hpp"

namespace vexlab {

MultiplierOperator MultiplierOperator::identity() {
  return {"identity", [](const Point&) { return cplx(1.0); }};
}

MultiplierOperator MultiplierOperator::hilbert() {
  return {"hilbert", [](const Point& xi) {
            if (xi[0] > 0.0) return cplx(0.0, -1.0);
            if (xi[0] < 0.0) return cplx(0.0, 1.0);
            return cplx(0.0);
          }};
}

MultiplierOperator MultiplierOperator::riesz(int j) {
  if (j != 1 && j != 2) throw Error("Riesz index must be 1 or 2");
  return {"riesz" + std::to_string(j), [j](const Point& xi) {
            const double r = std::hypot(xi[0], xi[1]);
            if (r == 0.0) return cplx(0.0);
            return cplx(0.0, -xi[j - 1] / r);
          }};
}

MultiplierOperator MultiplierOperator::bochner_riesz(double delta, double epsilon) {
  if (!(delta > 0.0)) throw Error("delta must be positive");
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  return {"bochner-riesz", [delta, epsilon](const Point& xi) {
            const double u = 1.0 - epsilon * epsilon * (xi[0] * xi[0] + xi[1] * xi[1]);
            return cplx(u > 0.0 ? std::pow(u, delta) : 0.0);
          }};
}

MultiplierOperator MultiplierOperator::by_name(const std::string& name) {
  if (name == "identity") return identity();
  if (name == "hilbert") return hilbert();
  if (name == "riesz1") return riesz(1);
  if (name == "riesz2") return riesz(2);
  throw Error("unknown operator: " + name);
}

GridFunction apply_multiplier(const MultiplierOperator& T, const GridFunction& f) {
  return apply_symbol(f, T.symbol);
}

KernelCheckReport czo_kernel_check(const Domain& d, const MultiplierOperator& T, double delta,
                                   const std::vector<double>& radius_grid) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error("delta must lie in (0, 1)");
  if (radius_grid.empty()) throw Error("empty radius grid");
  const int n = d.points_per_axis();
  const double h = d.spacing();
  // Window width balancing Nyquist leakage exp(-xi_max^2 / 2 s^2) against the
  // Gaussian spread exp(-(16h)^2 s^2 / 2) at the smallest scanned |x - y|; both
  // come out near exp(-8 pi).
  const double sigma = d.max_frequency() / std::sqrt(16.0 * std::numbers::pi);
  // Kernel on lattice offsets: k = F^{-1}(m w) / h^dim.
  std::vector<cplx> m(d.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Point xi = frequency(d, i);
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
    m[i] = T.symbol(xi) * std::exp(-0.5 * r2 / (sigma * sigma));
  }
  fft_inverse(d, m);
  const double inv_cell = 1.0 / d.cell_volume();
  auto k = [&](int ox, int oy) { return m[d.index(ox, oy)] * inv_cell; };
  const double nexp = d.dim() + delta;

  std::vector<double> radii(radius_grid);
  std::sort(radii.begin(), radii.end());
  // y offsets with 16h <= |y|; x offsets with |x| > 2|y| inside the
  // minimum-image box.
  const int half = n / 2;
  const int ymax = d.dim() == 1 ? 0 : half - 1;
  std::vector<double> per_y_best;
  std::vector<double> per_y_norm;
  std::vector<std::pair<int, int>> ys;
  for (int yy = -ymax; yy <= ymax; ++yy)
    for (int yx = -(half - 1); yx <= half - 1; ++yx) {
      const double ny = std::hypot(yx * h, yy * h);
      if (ny < 16.0 * h - 1e-12 || ny > radii.back()) continue;
      if (yx < 0 || (yx == 0 && yy < 0)) continue;  // y and -y give mirrored scans
      ys.emplace_back(yx, yy);
    }
  per_y_best.assign(ys.size(), 0.0);
  per_y_norm.assign(ys.size(), 0.0);
  parallel_for(ys.size(), [&](std::size_t q) {
    const auto [yx, yy] = ys[q];
    const double ny = std::hypot(yx * h, yy * h);
    per_y_norm[q] = ny;
    double best = 0.0;
    for (int xy = -ymax; xy <= ymax; ++xy)
      for (int xx = -(half - 1); xx <= half - 1; ++xx) {
        const double nx = std::hypot(xx * h, xy * h);
        if (!(nx > 2.0 * ny)) continue;
        // x - y must stay in the minimum-image box to be a genuine offset
        const int dx = xx - yx, dy = xy - yy;
        if (std::abs(dx) >= half || std::abs(dy) > ymax) continue;
        const double diff = std::abs(k(dx, dy) - k(xx, xy));
        best = std::max(best, diff * std::pow(nx, nexp) / std::pow(ny, delta));
      }
    per_y_best[q] = best;
  });
  KernelCheckReport rep;
  std::vector<double> values;
  for (double r : radii) {
    double best = 0.0;
    for (std::size_t q = 0; q < ys.size(); ++q)
      if (per_y_norm[q] <= r) best = std::max(best, per_y_best[q]);
    rep.trend.emplace_back(r, best);
    values.push_back(best);
  }
  rep.estimate = values.back();
  rep.verdict = classify_trend(values);
  return rep;
}

BochnerRieszSpec BochnerRieszSpec::standard(const Domain& d, double delta) {
  BochnerRieszSpec s;
  s.delta = delta;
  const double lo = d.spacing() / 8.0, hi = 4.0 * d.half_width();
  for (int k = 0; k < 32; ++k) s.epsilon_grid.push_back(lo * std::pow(hi / lo, k / 31.0));
  return s;
}

GridFunction bochner_riesz(const GridFunction& f, const BochnerRieszSpec& spec, double epsilon) {
  if (!(spec.delta > 0.0)) throw Error("delta must be positive");
  return apply_multiplier(MultiplierOperator::bochner_riesz(spec.delta, epsilon), f);
}

GridFunction bochner_riesz_maximal(const GridFunction& f, const BochnerRieszSpec& spec) {
  if (spec.epsilon_grid.empty()) throw Error("empty epsilon grid");
  const Domain& d = f.domain();
  std::vector<cplx> spectrum(f.values().begin(), f.values().end());
  fft_forward(d, spectrum);
  std::vector<double> r2(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = frequency_norm(d, i);
    r2[i] = r * r;
  }
  const std::size_t E = spec.epsilon_grid.size();
  std::vector<std::vector<double>> per(E);
  parallel_for(E, [&](std::size_t e) {
    const double eps = spec.epsilon_grid[e];
    std::vector<cplx> data(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double u = 1.0 - eps * eps * r2[i];
      data[i] = u > 0.0 ? std::pow(u, spec.delta) * spectrum[i] : cplx{};
    }
    fft_inverse(d, data);
    per[e].resize(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) per[e][i] = std::abs(data[i]);
  });
  std::vector<double> out(d.size(), 0.0);
  for (const auto& p : per)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], p[i]);
  return GridFunction(d, std::span<const double>(out));
}

OperatorNormEstimate boundedness_probe(const Operator& T, const SpaceSpec& s, const Dictionary& D,
                                       BoundednessTarget target, const ScaleGrid& scales) {
  std::vector<double> ratios(D.size());
  parallel_for(D.size(), [&](std::size_t i) {
    const double den = hardy_norm(D[i], s, scales);
    if (den == 0.0) {
      ratios[i] = std::numeric_limits<double>::quiet_NaN();
      return;
    }
    const GridFunction Tg = T(D[i]);
    const double num = target == BoundednessTarget::HardyToHardy ? hardy_norm(Tg, s, scales) : weighted_norm(Tg, s);
    ratios[i] = num / den;
  });
  return estimate_from_ratios(ratios, D.prefix_sizes());
}

}  // namespace vexlab
