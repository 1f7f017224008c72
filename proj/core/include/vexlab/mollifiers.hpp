#pragma once

#include <string>
#include <vector>

#include "vexlab/grid.hpp"
#include "vexlab/polynomial.hpp"

namespace vexlab {

/**
 * phi(x) = scale * poly(x) * envelope(x). The envelope is the Gaussian
 * exp(-|x|^2 / (2 sigma^2)) when sigma > 0, and the unit-ball indicator
 * (compact support) when sigma == 0.
 */
struct Mollifier {
  std::string name;
  int dim = 1;
  Polynomial poly;
  double sigma = 0.0;
  double scale = 1.0;

  bool compact() const { return sigma == 0.0; }
  double operator()(const Point& x) const;
  // D^nu phi, same envelope convention.
  double derivative(const Point& x, const MultiIndex& nu) const;
};

enum class MollifierClass { SchwartzN, HolderCompact };

struct MollifierDictionary {
  MollifierClass kind = MollifierClass::SchwartzN;
  int dim = 1;
  int N = 0;           // SchwartzN order
  double alpha = 0.0;  // HolderCompact exponent
  int d = 0;           // HolderCompact moment order
  std::vector<Mollifier> entries;
};

// Gaussians of width 1/2 and 1 and |x|^2 times the unit Gaussian, each
// scaled so that sup (1 + |x|)^N |D^a phi| over |a| <= N is 1 on a fine
// evaluation grid.
MollifierDictionary schwartz_dictionary(int dim, int N);

// D^beta [(1 - |x|^2)^{2d+2} x^gamma] with |beta| = d + 1 along the first
// axis and a few gamma, restricted to the unit ball. Integration by parts
// kills every moment of order <= d; the Hölder-alpha constant of all
// derivatives of order <= d is maximized over grid pairs and divided out.
MollifierDictionary holder_dictionary(int dim, double alpha, int d);

struct MollifierCheck {
  bool ok = true;
  std::vector<std::string> reasons;
  double seminorm = 0.0;    // SchwartzN
  double holder = 0.0;      // HolderCompact
  double max_moment = 0.0;  // HolderCompact, relative to int |phi|
};

MollifierCheck validate_mollifier(const Mollifier& m, const MollifierDictionary& params);

// Convolution kernel indexed by lattice offset: k[o] = h^n t^{-n} phi(z_o / t)
// with z_o the minimum-image offset; Gaussian envelopes are periodized over
// the neighbouring images. With moment_degree >= 0, discrete moments of order
// <= moment_degree are projected out on the disc |z| < t so that the sampled
// kernel annihilates grid polynomials exactly; when the disc holds too few
// samples for that, the kernel returned is zero.
std::vector<double> sample_dilated(const Domain& d, const Mollifier& m, double t, int moment_degree = -1);

// Grid seminorm helpers, exposed for tests.
double schwartz_seminorm(const Mollifier& m, int N);
double holder_constant(const Mollifier& m, double alpha, int d);

}  // namespace vexlab
