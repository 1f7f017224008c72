#include "vexlab/luxemburg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace vexlab {

WeightField::WeightField(const Domain& d, std::vector<double> values)
    : domain_(d), values_(std::move(values)) {
  if (values_.size() != d.size()) throw Error("value count does not match domain");
  for (double v : values_)
    if (!(v > 0.0) || !std::isfinite(v)) throw Error("weight must be positive and finite");
}

WeightField WeightField::constant(const Domain& d, double c) {
  return WeightField(d, std::vector<double>(d.size(), c));
}

WeightField WeightField::sample(const Domain& d, const std::function<double(const Point&)>& w) {
  std::vector<double> v(d.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = w(d.point(i));
  return WeightField(d, std::move(v));
}

WeightField WeightField::power(double a) const {
  std::vector<double> v(values_);
  for (double& x : v) x = std::pow(x, a);
  return WeightField(domain_, std::move(v));
}

WeightField WeightField::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return WeightField(domain_, std::move(v));
}

namespace weight_forms {

WeightField power(const Domain& d, double a) {
  return WeightField::sample(d, [&](const Point& x) {
    return std::pow(periodic_distance(d, x, {0.0, 0.0}), a);
  });
}

WeightField shifted_power(const Domain& d, double a) {
  return WeightField::sample(d, [&](const Point& x) {
    return std::pow(1.0 + periodic_distance(d, x, {0.0, 0.0}), a);
  });
}

WeightField step(const Domain& d, double height) {
  return WeightField::sample(d, [&](const Point& x) {
    bool inside = x[0] >= 0.0 && x[0] < 1.0;
    if (d.dim() == 2) inside = inside && x[1] >= 0.0 && x[1] < 1.0;
    return inside ? 1.0 + height : 1.0;
  });
}

}  // namespace weight_forms

SpaceSpec::SpaceSpec(ExponentField p_, WeightField w_) : p(std::move(p_)), w(std::move(w_)) {
  if (!(p.domain() == w.domain())) throw Error("domain mismatch");
}

SpaceSpec SpaceSpec::unweighted(ExponentField p_) {
  WeightField one = WeightField::constant(p_.domain(), 1.0);
  return SpaceSpec(std::move(p_), std::move(one));
}

namespace {

// sum |v / lambda|^p without the cell volume; +inf on overflow.
double raw_modular(std::span<const double> v, std::span<const double> p, double inv_lambda) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = v[i] * inv_lambda;
    if (x == 0.0) continue;
    s += x > 1e100 ? std::exp(p[i] * std::log(x)) : std::pow(x, p[i]);
  }
  return std::isfinite(s) ? s : std::numeric_limits<double>::infinity();
}

void check_input(std::span<const double> v, const ExponentField& p) {
  if (v.size() != p.size()) throw Error("domain mismatch");
  for (double x : v)
    if (!std::isfinite(x)) throw Error("non-finite input");
}

}  // namespace

double modular(std::span<const double> abs_values, const ExponentField& p) {
  check_input(abs_values, p);
  const double s = raw_modular(abs_values, p.values(), 1.0);
  if (!std::isfinite(s)) throw Error("modular overflow");
  return s * p.domain().cell_volume();
}

double modular(const GridFunction& f, const ExponentField& p) {
  if (!(f.domain() == p.domain())) throw Error("domain mismatch");
  return modular(f.abs(), p);
}

namespace {

// phi(t) = log sum_i |v_i|^{p_i} e^{-p_i t} over the nonzero samples, i.e. the
// log of the raw modular at lambda = e^t. Convex and decreasing in t.
struct LogModular {
  std::vector<double> a, p;  // log |v_i|, p_i

  LogModular(std::span<const double> v, std::span<const double> exps) {
    a.reserve(v.size());
    p.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0.0) {
        a.push_back(std::log(v[i]));
        p.push_back(exps[i]);
      }
  }

  double largest_term(double t) const {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, p[i] * (a[i] - t));
    return m;
  }

  // Value and derivative, with terms scaled by e^{-shift}. Any shift at or
  // above the largest term keeps the exponentials from overflowing.
  std::pair<double, double> operator()(double t, double shift) const {
    double s = 0.0, ds = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double e = std::exp(p[i] * (a[i] - t) - shift);
      s += e;
      ds += p[i] * e;
    }
    if (!(s > 1e-250)) return (*this)(t, largest_term(t));
    return {shift + std::log(s), -ds / s};
  }
  double operator()(double t) const { return (*this)(t, largest_term(t)).first; }
};

}  // namespace

double luxemburg_norm(std::span<const double> abs_values, const ExponentField& p) {
  check_input(abs_values, p);
  return luxemburg_norm(abs_values, p.values(), p.domain().cell_volume());
}

double luxemburg_norm(std::span<const double> abs_values, std::span<const double> exponents,
                      double cell_volume) {
  if (abs_values.size() != exponents.size()) throw Error("domain mismatch");
  if (abs_values.empty()) return 0.0;
  for (double x : abs_values)
    if (!std::isfinite(x)) throw Error("non-finite input");
  const double top = *std::max_element(abs_values.begin(), abs_values.end());
  if (top == 0.0) return 0.0;
  const LogModular phi(abs_values, exponents);
  // Compare against log(1 / h^dim) instead of rescaling every call.
  const double target = -std::log(cell_volume);
  auto above = [&](double lambda) { return phi(std::log(lambda)) > target; };
  const double ln2 = std::log(2.0);
  constexpr int kMaxDoublings = 200;

  // Left end of the bracket: max|f| itself, or halved until the modular
  // exceeds 1.
  const double t0 = std::log(top);
  double t = t0;
  for (int k = 0; !(phi(t) > target); ++k) {
    if (k == kMaxDoublings) throw Error("norm bracket failure");
    t -= ln2;
  }
  // Newton from the left on the convex phi never overshoots the root, so
  // every iterate stays a valid left end. Growing t only shrinks the terms,
  // so the shift taken here stays safe.
  const double shift = phi.largest_term(t);
  for (int it = 0; it < 100; ++it) {
    const auto [f, df] = phi(t, shift);
    if (!(f > target) || !(df < 0.0)) break;
    const double step = (f - target) / -df;
    t += step;
    if (step < 1e-13) break;
  }
  // The factor-2 bracket from max|f| would not have closed in time.
  if (t - t0 > kMaxDoublings * ln2) throw Error("norm bracket failure");

  const double lambda = std::exp(t);
  double lo = lambda * (1.0 - 4e-13), hi = lambda * (1.0 + 4e-13);
  if (phi(std::log(lo), shift).first > target && !(phi(std::log(hi), shift).first > target)) return hi;
  // Rounding left the root outside the thin bracket: bisect a wide one.
  // Invariant: modular(f / lo) > 1 >= modular(f / hi).
  lo = lambda / 2.0;
  hi = lambda * 2.0;
  while (!above(lo)) lo /= 2.0;
  while (above(hi)) hi *= 2.0;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (above(mid) ? lo : hi) = mid;
  }
  return hi;
}

double luxemburg_norm(const GridFunction& f, const ExponentField& p) {
  if (!(f.domain() == p.domain())) throw Error("domain mismatch");
  return luxemburg_norm(f.abs(), p);
}

double weighted_norm(std::span<const double> abs_values, const SpaceSpec& s) {
  if (abs_values.size() != s.w.size()) throw Error("domain mismatch");
  std::vector<double> fw(abs_values.size());
  for (std::size_t i = 0; i < fw.size(); ++i) fw[i] = abs_values[i] * s.w[i];
  return luxemburg_norm(fw, s.p);
}

double weighted_norm(const GridFunction& f, const SpaceSpec& s) {
  if (!(f.domain() == s.p.domain())) throw Error("domain mismatch");
  return weighted_norm(f.abs(), s);
}

double convexified_norm(std::span<const double> abs_values, const SpaceSpec& s, double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw Error("theta must be positive");
  if (theta == 1.0) return weighted_norm(abs_values, s);
  const SpaceSpec scaled(scale(s.p, theta), s.w.power(1.0 / theta));
  const double direct = weighted_norm(abs_values, scaled);

  std::vector<double> powered(abs_values.size());
  for (std::size_t i = 0; i < powered.size(); ++i) powered[i] = std::pow(abs_values[i], theta);
  const double via_power = std::pow(weighted_norm(powered, s), 1.0 / theta);

  const double scale_ref = std::max(direct, via_power);
  if (std::abs(direct - via_power) > 1e-9 * scale_ref) throw Error("convexification identity violated");
  return direct;
}

double convexified_norm(const GridFunction& f, const SpaceSpec& s, double theta) {
  if (!(f.domain() == s.p.domain())) throw Error("domain mismatch");
  return convexified_norm(f.abs(), s, theta);
}

double associate_pairing_check(const GridFunction& f, const GridFunction& g, const SpaceSpec& s) {
  const SpaceSpec dual(conjugate(s.p), s.w.power(-1.0));
  const double nf = weighted_norm(f, s);
  const double ng = weighted_norm(g, dual);
  if (nf == 0.0 || ng == 0.0) return 0.0;
  const auto af = f.abs();
  const auto ag = g.abs();
  std::vector<double> prod(af.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = af[i] * ag[i];
  return integrate(prod, f.domain()) / (nf * ng);
}

}  // namespace vexlab
