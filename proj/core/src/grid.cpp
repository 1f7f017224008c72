#include "vexlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vexlab {

Domain Domain::make(int dim, double half_width, int points_per_axis) {
  if (dim != 1 && dim != 2) throw Error("dimension must be 1 or 2");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw Error("half-width must be positive");
  if (points_per_axis < 8 || points_per_axis % 2 != 0)
    throw Error("points per axis must be an even integer >= 8");
  return Domain(dim, half_width, points_per_axis);
}

double Domain::cell_volume() const {
  const double h = spacing();
  return dim_ == 1 ? h : h * h;
}

double Domain::measure() const {
  const double w = 2.0 * half_width_;
  return dim_ == 1 ? w : w * w;
}

Point Domain::point(std::size_t idx) const {
  if (dim_ == 1) return {coord(static_cast<int>(idx)), 0.0};
  const int ix = static_cast<int>(idx % n_);
  const int iy = static_cast<int>(idx / n_);
  return {coord(ix), coord(iy)};
}

std::size_t Domain::index(int ix, int iy) const {
  ix = ((ix % n_) + n_) % n_;
  if (dim_ == 1) return std::size_t(ix);
  iy = ((iy % n_) + n_) % n_;
  return std::size_t(iy) * n_ + ix;
}

double Domain::max_frequency() const { return std::numbers::pi / spacing(); }
double Domain::min_frequency() const { return std::numbers::pi / half_width_; }

namespace {

double axis_distance(double a, double b, double period) {
  double d = std::fmod(std::abs(a - b), period);
  return std::min(d, period - d);
}

}  // namespace

double periodic_distance(const Domain& d, const Point& a, const Point& b) {
  const double period = 2.0 * d.half_width();
  const double dx = axis_distance(a[0], b[0], period);
  if (d.dim() == 1) return dx;
  const double dy = axis_distance(a[1], b[1], period);
  return std::hypot(dx, dy);
}

double offset_norm(const Domain& d, int ox, int oy) {
  const int n = d.points_per_axis();
  auto wrap = [n](int o) {
    o = ((o % n) + n) % n;
    return std::min(o, n - o);
  };
  const double h = d.spacing();
  const double dx = wrap(ox) * h;
  if (d.dim() == 1) return dx;
  return std::hypot(dx, wrap(oy) * h);
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(const Domain& d) : domain_(d), values_(d.size(), cplx{}) {}

GridFunction::GridFunction(const Domain& d, std::vector<cplx> values)
    : domain_(d), values_(std::move(values)) {
  if (values_.size() != d.size()) throw Error("value count does not match domain");
}

GridFunction::GridFunction(const Domain& d, std::span<const double> values)
    : domain_(d), values_(values.begin(), values.end()) {
  if (values_.size() != d.size()) throw Error("value count does not match domain");
}

GridFunction GridFunction::constant(const Domain& d, cplx c) {
  GridFunction f(d);
  std::fill(f.values_.begin(), f.values_.end(), c);
  return f;
}

GridFunction GridFunction::sample(const Domain& d, const std::function<double(const Point&)>& f) {
  GridFunction g(d);
  for (std::size_t i = 0; i < g.size(); ++i) g.values_[i] = f(d.point(i));
  return g;
}

GridFunction GridFunction::sample_complex(const Domain& d,
                                          const std::function<cplx(const Point&)>& f) {
  GridFunction g(d);
  for (std::size_t i = 0; i < g.size(); ++i) g.values_[i] = f(d.point(i));
  return g;
}

std::vector<double> GridFunction::abs() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](cplx v) { return std::abs(v); });
  return out;
}

std::vector<double> GridFunction::real() const {
  std::vector<double> out(values_.size());
  std::transform(values_.begin(), values_.end(), out.begin(), [](cplx v) { return v.real(); });
  return out;
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (cplx v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool GridFunction::is_real(double tol) const {
  return std::all_of(values_.begin(), values_.end(),
                     [tol](cplx v) { return std::abs(v.imag()) <= tol; });
}

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](cplx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](cplx v) { return v == cplx{}; });
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  if (!(o.domain_ == domain_)) throw Error("domain mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  if (!(o.domain_ == domain_)) throw Error("domain mismatch");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(cplx c) {
  for (cplx& v : values_) v *= c;
  return *this;
}

GridFunction GridFunction::times(std::span<const double> w) const {
  if (w.size() != values_.size()) throw Error("domain mismatch");
  GridFunction out = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] *= w[i];
  return out;
}

GridFunction GridFunction::times(const GridFunction& g) const {
  if (!(g.domain_ == domain_)) throw Error("domain mismatch");
  GridFunction out = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] *= g.values_[i];
  return out;
}

// ---------------------------------------------------------------------------

BallFamily::BallFamily(const Domain& d, std::vector<Ball> balls)
    : domain_(d), balls_(std::move(balls)) {
  if (balls_.empty()) throw Error("empty ball family");
  for (const Ball& b : balls_) {
    if (!(b.radius > 0.0) || b.radius > d.half_width() * (1.0 + 1e-12))
      throw Error("radius exceeds half-width");
  }
}

std::vector<double> BallFamily::radii() const {
  std::vector<double> r;
  r.reserve(balls_.size());
  for (const Ball& b : balls_) r.push_back(b.radius);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

BallFamily BallFamily::capped(double cap) const {
  if (kind_ == Kind::Windows1D) {
    const int w = std::min(max_window_, static_cast<int>(std::floor(2.0 * cap / domain_.spacing() + 1e-9)));
    if (w < 1) throw Error("empty ball family");
    return window_family(domain_, w);
  }
  if (kind_ == Kind::Lattice) {
    std::vector<double> r;
    for (double x : lattice_radii_)
      if (x <= cap) r.push_back(x);
    if (r.empty()) throw Error("empty ball family");
    return lattice_family(domain_, std::move(r));
  }
  std::vector<Ball> kept;
  for (const Ball& b : balls_)
    if (b.radius <= cap) kept.push_back(b);
  return BallFamily(domain_, std::move(kept));
}

std::vector<double> radius_caps(const BallFamily& F) {
  const auto r = F.radii();
  const double half = 0.5 * F.domain().half_width();
  if (r.front() >= half) return {r.front()};
  const double top = std::min(r.back(), half);
  std::vector<double> caps;
  for (double c = r.front(); c < top * (1.0 - 1e-12); c *= 2.0) caps.push_back(c);
  caps.push_back(top);
  return caps;
}

std::vector<std::size_t> ball_members(const Domain& d, const Ball& b) {
  const int n = d.points_per_axis();
  const double h = d.spacing();
  std::vector<std::size_t> out;
  // Index range covering the ball along one axis; the whole axis once it wraps.
  auto axis_range = [&](double c, int& lo, int& hi) {
    lo = static_cast<int>(std::floor((c - b.radius + d.half_width()) / h - 0.5)) - 1;
    hi = static_cast<int>(std::ceil((c + b.radius + d.half_width()) / h - 0.5)) + 1;
    if (hi - lo + 1 >= n) {
      lo = 0;
      hi = n - 1;
    }
  };
  int x0, x1;
  axis_range(b.center[0], x0, x1);
  if (d.dim() == 1) {
    for (int i = x0; i <= x1; ++i) {
      const std::size_t idx = d.index(i);
      if (periodic_distance(d, d.point(idx), b.center) < b.radius) out.push_back(idx);
    }
  } else {
    int y0, y1;
    axis_range(b.center[1], y0, y1);
    for (int j = y0; j <= y1; ++j)
      for (int i = x0; i <= x1; ++i) {
        const std::size_t idx = d.index(i, j);
        if (periodic_distance(d, d.point(idx), b.center) < b.radius) out.push_back(idx);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double integrate(std::span<const double> values, const Domain& d) {
  double s = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw Error("non-finite input");
    s += v;
  }
  return s * d.cell_volume();
}

double integrate(const GridFunction& f) {
  if (!f.all_finite()) throw Error("non-finite input");
  return integrate(f.real(), f.domain());
}

double ball_average(std::span<const double> abs_values, const Domain& d, const Ball& b) {
  const auto members = ball_members(d, b);
  if (members.empty()) throw Error("empty ball");
  double s = 0.0;
  for (std::size_t i : members) s += abs_values[i];
  return s / static_cast<double>(members.size());
}

double ball_average(const GridFunction& f, const Ball& b) {
  return ball_average(f.abs(), f.domain(), b);
}

BallFamily dyadic_family(const Domain& d, int centers_per_axis, std::vector<double> radii) {
  if (centers_per_axis < 1) throw Error("centers per axis must be >= 1");
  if (radii.empty()) throw Error("empty radius list");
  std::sort(radii.begin(), radii.end());
  for (double r : radii) {
    if (r > d.half_width() * (1.0 + 1e-12)) throw Error("radius exceeds half-width");
    if (!(r > 0.0)) throw Error("radius must be positive");
  }
  const double step = 2.0 * d.half_width() / centers_per_axis;
  std::vector<Ball> balls;
  const int cy = d.dim() == 1 ? 1 : centers_per_axis;
  for (int j = 0; j < cy; ++j)
    for (int i = 0; i < centers_per_axis; ++i) {
      const Point c{-d.half_width() + i * step, d.dim() == 1 ? 0.0 : -d.half_width() + j * step};
      for (double r : radii) balls.push_back({c, r});
    }
  BallFamily fam(d, std::move(balls));
  for (const Ball& b : fam.balls())
    if (ball_members(d, b).empty()) throw Error("empty ball");
  return fam;
}

BallFamily window_family(const Domain& d, int max_width) {
  if (d.dim() != 1) throw Error("window family requires a 1D domain");
  const int n = d.points_per_axis();
  if (max_width < 1 || max_width > n) throw Error("window width out of range");
  const double h = d.spacing();
  std::vector<Ball> balls;
  balls.reserve(std::size_t(n) * max_width);
  for (int a = 0; a < n; ++a)
    for (int w = 1; w <= max_width; ++w) {
      double c = d.coord(a) + 0.5 * (w - 1) * h;
      if (c >= d.half_width()) c -= 2.0 * d.half_width();
      balls.push_back({{c, 0.0}, std::min(0.5 * w * h, d.half_width())});
    }
  BallFamily fam(d, std::move(balls));
  fam.kind_ = BallFamily::Kind::Windows1D;
  fam.max_window_ = max_width;
  return fam;
}

BallFamily lattice_family(const Domain& d, std::vector<double> radii) {
  if (radii.empty()) throw Error("empty radius list");
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  for (double r : radii) {
    if (r > d.half_width() * (1.0 + 1e-12)) throw Error("radius exceeds half-width");
    if (!(r > 0.0)) throw Error("radius must be positive");
  }
  std::vector<Ball> balls;
  balls.reserve(d.size() * radii.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (double r : radii) balls.push_back({d.point(i), r});
  BallFamily fam(d, std::move(balls));
  fam.kind_ = BallFamily::Kind::Lattice;
  fam.lattice_radii_ = std::move(radii);
  return fam;
}

}  // namespace vexlab
