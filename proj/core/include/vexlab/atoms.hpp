#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "vexlab/grid.hpp"
#include "vexlab/luxemburg.hpp"
#include "vexlab/paley.hpp"
#include "vexlab/polynomial.hpp"

namespace vexlab {

/**
 * Ball-supported block with
 *   ||a||_{L^r} <= |B|^{1/r} / ||1_B||_{L^p_w}      (size)
 *   sum_x a(x) ((x - c) / R)^gamma = 0, |gamma| <= d  (moments)
 * r = +inf is allowed. |B| is the grid measure h^dim * (point count).
 */
struct Atom {
  Ball ball;
  GridFunction values;
  double r = std::numeric_limits<double>::infinity();
  int d = 0;
};

struct AtomCheck {
  bool ok = true;
  std::vector<std::string> reasons;  // "support", "size", "moment"
  double size_ratio = 0.0;           // ||a||_r / bound
  double max_moment = 0.0;           // relative to ||a||_1
};

AtomCheck validate_atom(const Atom& a, const SpaceSpec& s);

// Seeded random field on B, projected off the monomials of degree <= d by
// discrete least squares, then scaled to meet the size bound with equality.
// Throws when B holds fewer than (d + 2)^dim samples.
Atom make_atom(const Ball& B, int d, const SpaceSpec& s, double r, std::uint64_t seed);

struct AtomicSum {
  std::vector<Atom> atoms;
  std::vector<double> lambdas;
};

struct AtomicNormReport {
  double hardy = 0.0;
  double atomic = 0.0;
  double ratio = 0.0;  // hardy / atomic
};

// ||1_B||_{L^p_w} with B given by grid membership.
double ball_indicator_norm(const Ball& B, const SpaceSpec& s);

// atomic = || { sum_j (lambda_j / ||1_{B_j}||)^{p_*} 1_{B_j} }^{1/p_*} ||_{L^p_w}
AtomicNormReport atomic_norm_probe(const AtomicSum& sum, const SpaceSpec& s, const ScaleGrid& scales);

// Discrete L^2 best fit of degree <= d on the samples of B, expressed in the
// scaled local variable u = (x - c) / R (minimum-image displacement).
struct LocalPolynomial {
  Point center{0.0, 0.0};
  double radius = 1.0;
  int dim = 1;
  std::vector<MultiIndex> monomials;
  std::vector<double> coefficients;

  double operator()(const Domain& d, const Point& x) const;
};

// Fits Re f. Throws "degenerate ball" when the monomial matrix on B is rank
// deficient.
LocalPolynomial minimizing_polynomial(const GridFunction& f, const Ball& B, int d);

struct BallCollection {
  std::vector<Ball> balls;
  std::vector<double> lambdas;
};

/**
 * Max over collections of
 *   sum_k lambda_k |B_k| / ||1_{B_k}|| * [avg_{B_k} |f - P_{B_k} f|^q]^{1/q}
 *   / || { sum_j (lambda_j / ||1_{B_j}||)^{1/s} 1_{B_j} }^s ||
 * with the norms in L^p_w and point-count averages.
 */
double campanato_norm(const GridFunction& f, const SpaceSpec& s, double q, int d,
                      const std::vector<BallCollection>& collections, double s_index);

// Every ball of F as a singleton collection, plus `multi` seeded collections
// of 2..4 balls of F with random coefficients.
std::vector<BallCollection> default_campanato_collections(const BallFamily& F, std::uint64_t seed, int multi = 20);

}  // namespace vexlab
