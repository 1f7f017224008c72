#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vexlab/exponents.hpp"
#include "vexlab/grid.hpp"

namespace vexlab {

// Sampled weight, strictly positive and finite at every grid point.
class WeightField {
 public:
  WeightField(const Domain& d, std::vector<double> values);
  static WeightField constant(const Domain& d, double c);
  static WeightField sample(const Domain& d, const std::function<double(const Point&)>& w);

  const Domain& domain() const { return domain_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  // Pointwise w^a.
  WeightField power(double a) const;
  // Pointwise w * c, c > 0.
  WeightField scaled(double c) const;

 private:
  Domain domain_;
  std::vector<double> values_;
};

namespace weight_forms {
// |x|^a (torus distance to the origin; the grid never samples 0)
WeightField power(const Domain& d, double a);
// (1 + |x|)^a
WeightField shifted_power(const Domain& d, double a);
// 1 + height * 1_[0,1)^dim
WeightField step(const Domain& d, double height);
}  // namespace weight_forms

// The pair (p, w) defining the weighted space with norm ||f w||_{L^p}.
struct SpaceSpec {
  SpaceSpec(ExponentField p_, WeightField w_);
  static SpaceSpec unweighted(ExponentField p_);
  ExponentField p;
  WeightField w;
};

// h^dim * sum |f|^p. Throws "modular overflow" when the sum is not finite.
double modular(const GridFunction& f, const ExponentField& p);
double modular(std::span<const double> abs_values, const ExponentField& p);

// Luxemburg quasi-norm: the root of modular(f / lambda) = 1, found by
// factor-2 bracketing from max|f|, then Newton steps in log(lambda) that stay
// left of the root, closed off by bisection to 1e-12 relative.
double luxemburg_norm(const GridFunction& f, const ExponentField& p);
double luxemburg_norm(std::span<const double> abs_values, const ExponentField& p);
// Same on a bare list of samples (say the members of one ball); samples not
// listed are zero.
double luxemburg_norm(std::span<const double> abs_values, std::span<const double> exponents,
                      double cell_volume);

// ||f w||_{L^p}
double weighted_norm(const GridFunction& f, const SpaceSpec& s);
double weighted_norm(std::span<const double> abs_values, const SpaceSpec& s);

// Norm in L^{theta p}_{w^{1/theta}}, cross-checked against
// || |f|^theta ||_{L^p_w}^{1/theta}; the two agree exactly in exact
// arithmetic, so a mismatch beyond 1e-9 relative throws
// "convexification identity violated".
double convexified_norm(const GridFunction& f, const SpaceSpec& s, double theta);
double convexified_norm(std::span<const double> abs_values, const SpaceSpec& s, double theta);

// int |f g| / (||f||_{L^p_w} ||g||_{L^{p'}_{1/w}}); 0 when either norm is 0.
double associate_pairing_check(const GridFunction& f, const GridFunction& g, const SpaceSpec& s);

}  // namespace vexlab
