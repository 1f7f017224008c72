#include "vexlab/mollifiers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace vexlab {

namespace {

double sq_norm(const Point& x, int dim) { return x[0] * x[0] + (dim == 2 ? x[1] * x[1] : 0.0); }

// Polynomial Q with D^nu [P e^{-|x|^2 / 2 s^2}] = Q e^{-|x|^2 / 2 s^2}.
Polynomial gaussian_derivative(const Polynomial& p, double sigma, const MultiIndex& nu) {
  Polynomial q = p;
  const double inv = -1.0 / (sigma * sigma);
  for (int axis = 0; axis < 2; ++axis)
    for (int k = 0; k < nu[axis]; ++k) {
      MultiIndex e{0, 0};
      e[axis] = 1;
      q = q.derivative(axis) + Polynomial::term(inv, e) * q;
    }
  return q;
}

std::vector<MultiIndex> orders_up_to(int dim, int n) { return monomials_up_to(dim, n); }

// Evaluation lattice covering [-R, R]^dim with the given step.
std::vector<Point> eval_points(int dim, double R, double step) {
  const int n = static_cast<int>(std::ceil(R / step));
  std::vector<Point> pts;
  for (int j = -n; j <= (dim == 2 ? n : -n); ++j)
    for (int i = -n; i <= n; ++i) pts.push_back({i * step, dim == 2 ? j * step : 0.0});
  return pts;
}

}  // namespace

double Mollifier::operator()(const Point& x) const {
  const double r2 = sq_norm(x, dim);
  if (compact()) return r2 < 1.0 ? scale * poly(x) : 0.0;
  return scale * poly(x) * std::exp(-0.5 * r2 / (sigma * sigma));
}

double Mollifier::derivative(const Point& x, const MultiIndex& nu) const {
  const double r2 = sq_norm(x, dim);
  if (compact()) return r2 < 1.0 ? scale * poly.derivative(nu)(x) : 0.0;
  return scale * gaussian_derivative(poly, sigma, nu)(x) * std::exp(-0.5 * r2 / (sigma * sigma));
}

double schwartz_seminorm(const Mollifier& m, int N) {
  if (m.compact()) throw Error("seminorm helper expects a Gaussian envelope");
  const double R = m.sigma * (std::sqrt(2.0 * (N + m.poly.degree() + 1)) + 10.0);
  const double step = m.sigma / (m.dim == 1 ? 64.0 : 12.0);
  const auto pts = eval_points(m.dim, R, step);
  double best = 0.0;
  for (const MultiIndex& nu : orders_up_to(m.dim, N)) {
    const Polynomial q = gaussian_derivative(m.poly, m.sigma, nu);
    for (const Point& x : pts) {
      const double r2 = sq_norm(x, m.dim);
      const double v = std::pow(1.0 + std::sqrt(r2), N) * std::abs(q(x)) *
                       std::exp(-0.5 * r2 / (m.sigma * m.sigma));
      best = std::max(best, v);
    }
  }
  return best * m.scale;
}

double holder_constant(const Mollifier& m, double alpha, int d) {
  if (!m.compact()) throw Error("Hölder helper expects compact support");
  const double step = m.dim == 1 ? 1.0 / 64.0 : 1.0 / 16.0;
  const auto pts = eval_points(m.dim, 1.0 + step, step);
  double best = 0.0;
  for (const MultiIndex& nu : orders_up_to(m.dim, d)) {
    std::vector<double> v(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) v[i] = m.derivative(pts[i], nu);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (v[i] == 0.0 && v[j] == 0.0) continue;
        const double dx = pts[i][0] - pts[j][0], dy = pts[i][1] - pts[j][1];
        const double dist = std::sqrt(dx * dx + dy * dy);
        best = std::max(best, std::abs(v[i] - v[j]) / std::pow(dist, alpha));
      }
  }
  return best;
}

MollifierDictionary schwartz_dictionary(int dim, int N) {
  if (dim != 1 && dim != 2) throw Error("dimension must be 1 or 2");
  if (N < 0) throw Error("order must be >= 0");
  MollifierDictionary dict;
  dict.kind = MollifierClass::SchwartzN;
  dict.dim = dim;
  dict.N = N;
  Polynomial r2 = Polynomial::term(1.0, {2, 0});
  if (dim == 2) r2 += Polynomial::term(1.0, {0, 2});
  dict.entries.push_back({"gauss-0.5", dim, Polynomial::constant(1.0), 0.5, 1.0});
  dict.entries.push_back({"gauss-1", dim, Polynomial::constant(1.0), 1.0, 1.0});
  dict.entries.push_back({"r2-gauss-1", dim, r2, 1.0, 1.0});
  for (Mollifier& m : dict.entries) m.scale = 1.0 / schwartz_seminorm(m, N);
  return dict;
}

namespace {

// Integral of x^a over the unit ball of R^dim: 2 prod G(b_i) / (G(sum b_i) (|a| + dim)), b_i = (a_i + 1)/2.
double ball_monomial_integral(int dim, const MultiIndex& a) {
  for (int i = 0; i < dim; ++i)
    if (a[i] % 2) return 0.0;
  if (dim == 1) return 2.0 / (a[0] + 1);
  const double b0 = (a[0] + 1) / 2.0, b1 = (a[1] + 1) / 2.0;
  return 2.0 * std::exp(std::lgamma(b0) + std::lgamma(b1) - std::lgamma(b0 + b1)) / (a[0] + a[1] + 2);
}

}  // namespace

MollifierDictionary holder_dictionary(int dim, double alpha, int d) {
  if (dim != 1 && dim != 2) throw Error("dimension must be 1 or 2");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("alpha must lie in (0, 1]");
  if (d < 0) throw Error("moment order must be >= 0");
  MollifierDictionary dict;
  dict.kind = MollifierClass::HolderCompact;
  dict.dim = dim;
  dict.alpha = alpha;
  dict.d = d;
  Polynomial base = Polynomial::constant(1.0) + Polynomial::term(-1.0, {2, 0});
  if (dim == 2) base += Polynomial::term(-1.0, {0, 2});
  const Polynomial envelope = pow(base, 2 * d + 2);
  std::vector<MultiIndex> gammas{{0, 0}, {1, 0}, {2, 0}};
  if (dim == 2) gammas = {{0, 0}, {1, 0}, {0, 1}};
  for (const MultiIndex& g : gammas) {
    Mollifier m;
    m.name = "bump-derivative-" + std::to_string(g[0]) + std::to_string(g[1]);
    m.dim = dim;
    m.poly = (envelope * Polynomial::term(1.0, g)).derivative(MultiIndex{d + 1, 0});
    if (m.poly.coefficients().empty() || m.poly.degree() == 0) continue;
    const double h = holder_constant(m, alpha, d);
    if (!(h > 0.0)) continue;
    m.scale = 1.0 / h;
    dict.entries.push_back(std::move(m));
  }
  return dict;
}

MollifierCheck validate_mollifier(const Mollifier& m, const MollifierDictionary& params) {
  MollifierCheck c;
  if (m.dim != params.dim) {
    c.ok = false;
    c.reasons.push_back("dimension");
    return c;
  }
  if (params.kind == MollifierClass::SchwartzN) {
    if (m.compact()) {
      c.ok = false;
      c.reasons.push_back("envelope");
      return c;
    }
    c.seminorm = schwartz_seminorm(m, params.N);
    if (c.seminorm > 1.0 + 1e-9) {
      c.ok = false;
      c.reasons.push_back("seminorm");
    }
    return c;
  }
  if (!m.compact()) {
    c.ok = false;
    c.reasons.push_back("support");
    return c;
  }
  // Moments are exact (polynomial over the unit ball); the mass that scales
  // them comes from midpoint quadrature.
  const double step = m.dim == 1 ? 1.0 / 4096.0 : 1.0 / 256.0;
  const int n = static_cast<int>(1.0 / step);
  double mass = 0.0;
  for (int j = -n; j < (m.dim == 2 ? n : -n + 1); ++j)
    for (int i = -n; i < n; ++i) {
      const Point x{(i + 0.5) * step, m.dim == 2 ? (j + 0.5) * step : 0.0};
      mass += std::abs(m(x)) * (m.dim == 2 ? step * step : step);
    }
  const auto gammas = monomials_up_to(m.dim, params.d);
  std::vector<double> mom(gammas.size(), 0.0);
  for (std::size_t g = 0; g < gammas.size(); ++g)
    for (const auto& [e, coef] : m.poly.coefficients())
      mom[g] += m.scale * coef * ball_monomial_integral(m.dim, {e[0] + gammas[g][0], e[1] + gammas[g][1]});
  for (double v : mom) c.max_moment = std::max(c.max_moment, mass > 0.0 ? std::abs(v) / mass : 0.0);
  if (mass == 0.0) {
    c.ok = false;
    c.reasons.push_back("zero");
  }
  if (c.max_moment > 1e-8) {
    c.ok = false;
    c.reasons.push_back("moment");
  }
  c.holder = holder_constant(m, params.alpha, params.d);
  if (c.holder > 1.0 + 1e-9) {
    c.ok = false;
    c.reasons.push_back("holder");
  }
  return c;
}

std::vector<double> sample_dilated(const Domain& d, const Mollifier& m, double t, int moment_degree) {
  if (!(t > 0.0)) throw Error("scale must be positive");
  if (m.dim != d.dim()) throw Error("dimension mismatch");
  const int n = d.points_per_axis();
  const double h = d.spacing();
  const double period = 2.0 * d.half_width();
  const double norm = d.cell_volume() / (d.dim() == 1 ? t : t * t);
  // Gaussian tails are periodized over enough images to reach ~10 sigma.
  const int images = m.compact() ? 0 : std::max(1, static_cast<int>(std::ceil(10.0 * m.sigma * t / period)));
  std::vector<double> k(d.size(), 0.0);
  const int rows = d.dim() == 1 ? 1 : n;
  for (int oy = 0; oy < rows; ++oy)
    for (int ox = 0; ox < n; ++ox) {
      const double zx = (ox < n / 2 ? ox : ox - n) * h;
      const double zy = d.dim() == 2 ? (oy < n / 2 ? oy : oy - n) * h : 0.0;
      double v = 0.0;
      for (int iy = -images * (d.dim() - 1); iy <= images * (d.dim() - 1); ++iy)
        for (int ix = -images; ix <= images; ++ix)
          v += m({(zx + ix * period) / t, (zy + iy * period) / t});
      k[std::size_t(oy) * n + ox] = norm * v;
    }
  if (moment_degree < 0) return k;

  // Project out discrete moments on the disc |z| < t with weight (1-|z/t|^2)^2.
  const auto gammas = monomials_up_to(d.dim(), moment_degree);
  const std::size_t g = gammas.size();
  std::vector<std::size_t> disc;
  std::vector<Point> zs;
  std::vector<double> wts;
  for (int oy = 0; oy < rows; ++oy)
    for (int ox = 0; ox < n; ++ox) {
      const double zx = (ox < n / 2 ? ox : ox - n) * h / t;
      const double zy = d.dim() == 2 ? (oy < n / 2 ? oy : oy - n) * h / t : 0.0;
      const double r2 = zx * zx + zy * zy;
      if (r2 >= 1.0) continue;
      disc.push_back(std::size_t(oy) * n + ox);
      zs.push_back({zx, zy});
      wts.push_back((1.0 - r2) * (1.0 - r2));
    }
  Eigen::MatrixXd A(g, g);
  Eigen::VectorXd b(g);
  A.setZero();
  b.setZero();
  for (std::size_t q = 0; q < disc.size(); ++q) {
    for (std::size_t a = 0; a < g; ++a) {
      const double za = monomial(zs[q], gammas[a]);
      b(a) += k[disc[q]] * za;
      for (std::size_t c = 0; c < g; ++c) A(a, c) += wts[q] * za * monomial(zs[q], gammas[c]);
    }
  }
  // Moments of the off-disc part (periodized tails) are included via b only
  // for disc points; compact kernels vanish off the disc anyway.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < static_cast<Eigen::Index>(g)) {
    // Too few samples in the disc to carry the moment conditions: only the
    // zero kernel annihilates every grid polynomial there.
    std::fill(k.begin(), k.end(), 0.0);
    return k;
  }
  const Eigen::VectorXd c = qr.solve(b);
  for (std::size_t q = 0; q < disc.size(); ++q) {
    double corr = 0.0;
    for (std::size_t a = 0; a < g; ++a) corr += c(a) * monomial(zs[q], gammas[a]);
    k[disc[q]] -= wts[q] * corr;
  }
  return k;
}

}  // namespace vexlab
