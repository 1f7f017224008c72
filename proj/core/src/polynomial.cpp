#include "vexlab/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace vexlab {

std::vector<MultiIndex> monomials_up_to(int dim, int degree) {
  std::vector<MultiIndex> out;
  for (int total = 0; total <= degree; ++total) {
    if (dim == 1) {
      out.push_back({total, 0});
    } else {
      for (int a = total; a >= 0; --a) out.push_back({a, total - a});
    }
  }
  return out;
}

double monomial(const Point& x, const MultiIndex& gamma) {
  double v = 1.0;
  for (int k = 0; k < gamma[0]; ++k) v *= x[0];
  for (int k = 0; k < gamma[1]; ++k) v *= x[1];
  return v;
}

Polynomial Polynomial::constant(double c) { return term(c, {0, 0}); }

Polynomial Polynomial::term(double c, MultiIndex gamma) {
  Polynomial p;
  if (c != 0.0) p.coeffs_[gamma] = c;
  return p;
}

double Polynomial::operator()(const Point& x) const {
  double s = 0.0;
  for (const auto& [g, c] : coeffs_) s += c * monomial(x, g);
  return s;
}

Polynomial Polynomial::derivative(int axis) const {
  Polynomial out;
  for (const auto& [g, c] : coeffs_) {
    if (g[axis] == 0) continue;
    MultiIndex h = g;
    h[axis] -= 1;
    out.coeffs_[h] += c * g[axis];
  }
  return out;
}

Polynomial Polynomial::derivative(const MultiIndex& order) const {
  Polynomial out = *this;
  for (int k = 0; k < order[0]; ++k) out = out.derivative(0);
  for (int k = 0; k < order[1]; ++k) out = out.derivative(1);
  return out;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [g, c] : coeffs_)
    if (c != 0.0) d = std::max(d, g[0] + g[1]);
  return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [g, c] : o.coeffs_) coeffs_[g] += c;
  return *this;
}

Polynomial& Polynomial::operator*=(double c) {
  for (auto& [g, v] : coeffs_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ga, ca] : a.coeffs_)
    for (const auto& [gb, cb] : b.coeffs_) out.coeffs_[{ga[0] + gb[0], ga[1] + gb[1]}] += ca * cb;
  return out;
}

Polynomial pow(const Polynomial& p, int k) {
  Polynomial out = Polynomial::constant(1.0);
  for (int i = 0; i < k; ++i) out = out * p;
  return out;
}

}  // namespace vexlab
