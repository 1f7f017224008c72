#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vexlab/grid.hpp"

namespace vexlab {

/**
 * Sampled variable exponent p(.) with 0 < p_- <= p(x) <= p_+ < inf.
 *
 * p_star = min{p_-, 1} is the convexification index used throughout the
 * weighted Hardy space machinery.
 */
class ExponentField {
 public:
  ExponentField(const Domain& d, std::vector<double> values);
  static ExponentField constant(const Domain& d, double p);
  static ExponentField sample(const Domain& d, const std::function<double(const Point&)>& p);

  const Domain& domain() const { return domain_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  double p_minus() const { return p_minus_; }
  double p_plus() const { return p_plus_; }
  double p_star() const { return p_minus_ < 1.0 ? p_minus_ : 1.0; }
  bool is_constant() const { return p_minus_ == p_plus_; }

 private:
  Domain domain_;
  std::vector<double> values_;
  double p_minus_ = 0.0;
  double p_plus_ = 0.0;
};

// p'(x) = p(x) / (p(x) - 1). Throws "conjugate requires p₋ > 1".
ExponentField conjugate(const ExponentField& p);

// theta * p(x). Throws for theta <= 0.
ExponentField scale(const ExponentField& p, double theta);

struct LogHolderDiagnostic {
  double c_log_estimate = 0.0;
  double c_infty_estimate = 0.0;
  double p_infty_fit = 0.0;
  // (sample spacing, cumulative estimate) from coarsest to finest lattice.
  std::vector<std::pair<double, double>> trend;
};

/**
 * Heuristic log-Hölder scan. Level j of `refinements` inspects the lattice
 * of stride 2^(refinements - j): all pairs on a capped sub-lattice plus
 * short-range neighbour pairs on the level lattice, and the decay
 * |p(x) - p_inf| log(e + |x|) on every level point. The trend is a running
 * maximum, so it is nondecreasing by construction; growth under refinement
 * is evidence against the condition, a flat trend is evidence for it.
 *
 * p_inf defaults to the mean of p over the outer shell |x|_inf > 0.9 L.
 */
LogHolderDiagnostic log_holder_diagnostic(const ExponentField& p, int refinements,
                                          std::optional<double> p_infty_override = std::nullopt);

// Named analytic exponent profiles, sampled onto the grid.
namespace exponent_forms {

// a + b |x| / L, with |x| the torus distance to the origin.
ExponentField affine_radial(const Domain& d, double a, double b);
// base + amplitude * mean_i sin^2(pi * frequency * x_i / L)
ExponentField sin_perturbed(const Domain& d, double base, double amplitude, double frequency = 1.0);
// base + amplitude * exp(-|x|^2)
ExponentField gaussian_bump(const Domain& d, double base, double amplitude);
// p_inf + phi(x_1) where phi is the sum of tent spikes of height 1/k and
// half-width 1/k centred at e^(k^2), k = 1..k_max: continuous, locally
// Lipschitz, but |p(x) - p_inf| does not decay like 1/log|x|.
ExponentField spike(const Domain& d, double p_infty, int k_max);
double spike_profile(double x, double p_infty, int k_max);

}  // namespace exponent_forms

}  // namespace vexlab
