#pragma once

#include <array>
#include <map>
#include <vector>

#include "vexlab/grid.hpp"

namespace vexlab {

using MultiIndex = std::array<int, 2>;

// Multi-indices of total degree <= d in the given dimension, graded order.
std::vector<MultiIndex> monomials_up_to(int dim, int degree);

// x^gamma for a point (second exponent ignored in 1D).
double monomial(const Point& x, const MultiIndex& gamma);

// Polynomial in at most two variables with real coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(double c);
  static Polynomial term(double c, MultiIndex gamma);

  double operator()(const Point& x) const;
  Polynomial derivative(int axis) const;
  Polynomial derivative(const MultiIndex& order) const;
  int degree() const;
  const std::map<MultiIndex, double>& coefficients() const { return coeffs_; }

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator*=(double c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(Polynomial a, double c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  std::map<MultiIndex, double> coeffs_;
};

Polynomial pow(const Polynomial& p, int k);

}  // namespace vexlab
