#include "vexlab/atoms.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "vexlab/random.hpp"

namespace vexlab {

namespace {

double wrap(double v, double period) { return std::remainder(v, period); }

Point local_coord(const Domain& d, const Ball& B, const Point& x) {
  const double period = 2.0 * d.half_width();
  return {wrap(x[0] - B.center[0], period) / B.radius,
          d.dim() == 2 ? wrap(x[1] - B.center[1], period) / B.radius : 0.0};
}

double grid_measure(const Domain& d, std::size_t count) { return d.cell_volume() * static_cast<double>(count); }

double size_bound(const Domain& d, const Ball& B, std::size_t count, double r, const SpaceSpec& s) {
  const double ind = ball_indicator_norm(B, s);
  const double meas = std::isinf(r) ? 1.0 : std::pow(grid_measure(d, count), 1.0 / r);
  return meas / ind;
}

double lr_norm(const Domain& d, std::span<const double> a, double r) {
  if (std::isinf(r)) return *std::max_element(a.begin(), a.end());
  double s = 0.0;
  for (double v : a) s += std::pow(v, r);
  return std::pow(s * d.cell_volume(), 1.0 / r);
}

}  // namespace

double ball_indicator_norm(const Ball& B, const SpaceSpec& s) {
  const Domain& d = s.p.domain();
  std::vector<double> ind(d.size(), 0.0);
  const auto members = ball_members(d, B);
  if (members.empty()) throw Error("empty ball");
  for (std::size_t i : members) ind[i] = 1.0;
  return weighted_norm(ind, s);
}

AtomCheck validate_atom(const Atom& a, const SpaceSpec& s) {
  const Domain& d = a.values.domain();
  AtomCheck c;
  const auto members = ball_members(d, a.ball);
  if (members.empty()) throw Error("empty ball");
  std::vector<char> inside(d.size(), 0);
  for (std::size_t i : members) inside[i] = 1;
  const auto abs = a.values.abs();
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!inside[i] && abs[i] != 0.0) {
      c.ok = false;
      c.reasons.push_back("support");
      break;
    }
  c.size_ratio = lr_norm(d, abs, a.r) / size_bound(d, a.ball, members.size(), a.r, s);
  if (c.size_ratio > 1.0 + 1e-9) {
    c.ok = false;
    c.reasons.push_back("size");
  }
  double l1 = 0.0;
  for (std::size_t i : members) l1 += abs[i];
  for (const MultiIndex& g : monomials_up_to(d.dim(), a.d)) {
    cplx m{};
    for (std::size_t i : members) m += a.values[i] * monomial(local_coord(d, a.ball, d.point(i)), g);
    if (l1 > 0.0) c.max_moment = std::max(c.max_moment, std::abs(m) / l1);
  }
  if (c.max_moment > 1e-10) {
    c.ok = false;
    c.reasons.push_back("moment");
  }
  return c;
}

Atom make_atom(const Ball& B, int d, const SpaceSpec& s, double r, std::uint64_t seed) {
  if (d < 0) throw Error("moment order must be >= 0");
  if (!(r > 1.0)) throw Error("r must exceed 1");
  const Domain& dom = s.p.domain();
  const auto members = ball_members(dom, B);
  const std::size_t need = dom.dim() == 1 ? std::size_t(d + 2) : std::size_t(d + 2) * (d + 2);
  if (members.size() < need) throw Error("ball too small for the requested moment order");

  const auto gammas = monomials_up_to(dom.dim(), d);
  Eigen::MatrixXd V(members.size(), gammas.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Point u = local_coord(dom, B, dom.point(members[i]));
    for (std::size_t g = 0; g < gammas.size(); ++g) V(i, g) = monomial(u, gammas[g]);
  }
  Rng rng(seed);
  Eigen::VectorXd v(members.size());
  for (auto& x : v) x = rng.normal();
  // Two projection passes keep the residual moments at rounding level.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
  if (qr.rank() < static_cast<Eigen::Index>(gammas.size())) throw Error("degenerate ball");
  for (int pass = 0; pass < 2; ++pass) v -= V * qr.solve(v);

  GridFunction values(dom);
  for (std::size_t i = 0; i < members.size(); ++i) values[members[i]] = v(i);
  const double norm = lr_norm(dom, values.abs(), r);
  if (!(norm > 0.0)) throw Error("degenerate ball");
  values *= size_bound(dom, B, members.size(), r, s) / norm;
  return Atom{B, std::move(values), r, d};
}

AtomicNormReport atomic_norm_probe(const AtomicSum& sum, const SpaceSpec& s, const ScaleGrid& scales) {
  if (sum.atoms.empty() || sum.atoms.size() != sum.lambdas.size()) throw Error("malformed atomic sum");
  const Domain& d = s.p.domain();
  GridFunction f(d);
  std::vector<double> agg(d.size(), 0.0);
  const double ps = s.p.p_star();
  for (std::size_t j = 0; j < sum.atoms.size(); ++j) {
    const double lambda = sum.lambdas[j];
    if (!(lambda >= 0.0)) throw Error("coefficients must be nonnegative");
    f += sum.atoms[j].values * cplx(lambda);
    const double c = std::pow(lambda / ball_indicator_norm(sum.atoms[j].ball, s), ps);
    for (std::size_t i : ball_members(d, sum.atoms[j].ball)) agg[i] += c;
  }
  for (double& v : agg) v = std::pow(v, 1.0 / ps);
  AtomicNormReport rep;
  rep.hardy = hardy_norm(f, s, scales);
  rep.atomic = weighted_norm(agg, s);
  rep.ratio = rep.atomic > 0.0 ? rep.hardy / rep.atomic : 0.0;
  return rep;
}

double LocalPolynomial::operator()(const Domain& d, const Point& x) const {
  const Point u = local_coord(d, {center, radius}, x);
  double v = 0.0;
  for (std::size_t g = 0; g < monomials.size(); ++g) v += coefficients[g] * monomial(u, monomials[g]);
  return v;
}

LocalPolynomial minimizing_polynomial(const GridFunction& f, const Ball& B, int d) {
  if (d < 0) throw Error("degree must be >= 0");
  const Domain& dom = f.domain();
  const auto members = ball_members(dom, B);
  LocalPolynomial P;
  P.center = B.center;
  P.radius = B.radius;
  P.dim = dom.dim();
  P.monomials = monomials_up_to(dom.dim(), d);
  if (members.size() < P.monomials.size()) throw Error("degenerate ball");
  Eigen::MatrixXd V(members.size(), P.monomials.size());
  Eigen::VectorXd y(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Point u = local_coord(dom, B, dom.point(members[i]));
    for (std::size_t g = 0; g < P.monomials.size(); ++g) V(i, g) = monomial(u, P.monomials[g]);
    y(i) = f[members[i]].real();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
  if (qr.rank() < static_cast<Eigen::Index>(P.monomials.size())) throw Error("degenerate ball");
  Eigen::VectorXd c = qr.solve(y);
  // one step of iterative refinement on the residual
  c += qr.solve(y - V * c);
  P.coefficients.assign(c.data(), c.data() + c.size());
  return P;
}

double campanato_norm(const GridFunction& f, const SpaceSpec& s, double q, int d,
                      const std::vector<BallCollection>& collections, double s_index) {
  if (!(q >= 1.0)) throw Error("q must be >= 1");
  if (!(s_index > 0.0)) throw Error("s must be positive");
  if (collections.empty()) throw Error("no ball collections");
  const Domain& dom = f.domain();
  double best = 0.0;
  for (const BallCollection& col : collections) {
    if (col.balls.empty() || col.balls.size() != col.lambdas.size()) throw Error("malformed ball collection");
    double lsum = 0.0;
    for (double l : col.lambdas) {
      if (!(l >= 0.0)) throw Error("coefficients must be nonnegative");
      lsum += l;
    }
    if (lsum == 0.0) throw Error("collection coefficients sum to zero");
    double numerator = 0.0;
    std::vector<double> agg(dom.size(), 0.0);
    for (std::size_t k = 0; k < col.balls.size(); ++k) {
      const Ball& B = col.balls[k];
      const auto members = ball_members(dom, B);
      if (members.empty()) throw Error("empty ball");
      const double ind = ball_indicator_norm(B, s);
      const double lam = col.lambdas[k];
      if (lam == 0.0) continue;
      const LocalPolynomial P = minimizing_polynomial(f, B, d);
      double osc = 0.0;
      for (std::size_t i : members) osc += std::pow(std::abs(f[i] - P(dom, dom.point(i))), q);
      osc = std::pow(osc / static_cast<double>(members.size()), 1.0 / q);
      numerator += lam * grid_measure(dom, members.size()) / ind * osc;
      const double c = std::pow(lam / ind, 1.0 / s_index);
      for (std::size_t i : members) agg[i] += c;
    }
    for (double& v : agg) v = std::pow(v, s_index);
    const double den = weighted_norm(agg, s);
    best = std::max(best, numerator / den);
  }
  return best;
}

std::vector<BallCollection> default_campanato_collections(const BallFamily& F, std::uint64_t seed, int multi) {
  std::vector<BallCollection> out;
  const auto balls = F.balls();
  for (const Ball& b : balls) out.push_back({{b}, {1.0}});
  Rng rng(seed);
  for (int c = 0; c < multi; ++c) {
    BallCollection col;
    const int m = 2 + static_cast<int>(rng.below(3));
    for (int j = 0; j < m; ++j) {
      col.balls.push_back(balls[rng.below(balls.size())]);
      col.lambdas.push_back(rng.uniform(0.1, 1.0));
    }
    out.push_back(std::move(col));
  }
  return out;
}

}  // namespace vexlab
