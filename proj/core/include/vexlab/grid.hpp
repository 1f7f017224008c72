#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "vexlab/error.hpp"

namespace vexlab {

using cplx = std::complex<double>;

// A point of the box. In 1D the second coordinate is always zero.
using Point = std::array<double, 2>;

/**
 * Uniform periodic box [-L, L)^dim sampled with N points per axis.
 *
 * Samples sit at cell midpoints x_j = -L + (j + 1/2) h, so no sample is the
 * origin and singular power weights |x|^a are finite on the grid. Flat
 * indices are row-major: idx = iy * N + ix.
 */
class Domain {
 public:
  static Domain make(int dim, double half_width, int points_per_axis);

  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  int points_per_axis() const { return n_; }
  double spacing() const { return 2.0 * half_width_ / n_; }
  std::size_t size() const { return dim_ == 1 ? std::size_t(n_) : std::size_t(n_) * n_; }
  // h^dim
  double cell_volume() const;
  // (2L)^dim
  double measure() const;

  double coord(int j) const { return -half_width_ + (j + 0.5) * spacing(); }
  Point point(std::size_t idx) const;
  std::size_t index(int ix, int iy = 0) const;

  // Largest lattice frequency magnitude along one axis (pi / h) and the
  // smallest nonzero one (pi / L).
  double max_frequency() const;
  double min_frequency() const;

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.dim_ == b.dim_ && a.half_width_ == b.half_width_ && a.n_ == b.n_;
  }

 private:
  Domain(int dim, double L, int N) : dim_(dim), half_width_(L), n_(N) {}
  int dim_;
  double half_width_;
  int n_;
};

// Distance on the torus (per-axis minimum image, then Euclidean).
double periodic_distance(const Domain& d, const Point& a, const Point& b);
// Minimum-image norm of an integer lattice offset, in physical units.
double offset_norm(const Domain& d, int ox, int oy);

/**
 * Samples of a complex- or real-valued function on a Domain.
 */
class GridFunction {
 public:
  explicit GridFunction(const Domain& d);
  GridFunction(const Domain& d, std::vector<cplx> values);
  GridFunction(const Domain& d, std::span<const double> values);

  static GridFunction constant(const Domain& d, cplx c);
  static GridFunction sample(const Domain& d, const std::function<double(const Point&)>& f);
  static GridFunction sample_complex(const Domain& d, const std::function<cplx(const Point&)>& f);

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return values_.size(); }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  cplx operator[](std::size_t i) const { return values_[i]; }
  cplx& operator[](std::size_t i) { return values_[i]; }

  std::vector<double> abs() const;
  std::vector<double> real() const;
  double max_abs() const;
  bool is_real(double tol = 0.0) const;
  bool all_finite() const;
  bool is_zero() const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(cplx c);
  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, cplx c) { return a *= c; }
  friend GridFunction operator*(cplx c, GridFunction a) { return a *= c; }
  // Pointwise product.
  GridFunction times(std::span<const double> w) const;
  GridFunction times(const GridFunction& g) const;

 private:
  Domain domain_;
  std::vector<cplx> values_;
};

struct Ball {
  Point center{0.0, 0.0};
  double radius = 0.0;
};

/**
 * Finite list of balls standing in for "all balls". Families built by
 * window_family() / lattice_family() are tagged so the maximal operator can
 * use a sliding-window or FFT fast path instead of per-ball scatter.
 */
class BallFamily {
 public:
  enum class Kind { Generic, Windows1D, Lattice };

  BallFamily(const Domain& d, std::vector<Ball> balls);

  const Domain& domain() const { return domain_; }
  std::span<const Ball> balls() const { return balls_; }
  std::size_t size() const { return balls_.size(); }
  Kind kind() const { return kind_; }
  int max_window() const { return max_window_; }
  std::span<const double> lattice_radii() const { return lattice_radii_; }

  // Sorted distinct radii.
  std::vector<double> radii() const;
  // Sub-family of balls with radius <= cap; window and lattice families
  // keep their kind. Throws "empty ball family" when nothing survives.
  BallFamily capped(double cap) const;

 private:
  friend BallFamily window_family(const Domain&, int);
  friend BallFamily lattice_family(const Domain&, std::vector<double>);
  Domain domain_;
  std::vector<Ball> balls_;
  Kind kind_ = Kind::Generic;
  int max_window_ = 0;
  std::vector<double> lattice_radii_;
};

// Radius caps along which family trends are read: r_min 2^k below L/2,
// closed by min(r_max, L/2). Balls wider than L/2 wrap around the torus and
// see the whole box, so refining past it says nothing new.
std::vector<double> radius_caps(const BallFamily& F);

// Flat indices of the samples inside the open ball (periodic distance < r).
std::vector<std::size_t> ball_members(const Domain& d, const Ball& b);

// h^dim * sum_j f(x_j). Throws "non-finite input".
double integrate(std::span<const double> values, const Domain& d);
double integrate(const GridFunction& f);

// Point-count average of |f| over the grid points in B. Throws "empty ball".
double ball_average(const GridFunction& f, const Ball& b);
double ball_average(std::span<const double> abs_values, const Domain& d, const Ball& b);

// Uniform center lattice c_k = -L + k 2L / C (so the origin is a center when
// C is even) crossed with the radius list; center-major, radius ascending.
BallFamily dyadic_family(const Domain& d, int centers_per_axis, std::vector<double> radii);

// 1D: every periodic window of 1..max_width consecutive samples, as balls of
// radius width*h/2 centered on the window midpoint.
BallFamily window_family(const Domain& d, int max_width);

// 2D (or 1D): every sample point as a center, crossed with the radius list.
BallFamily lattice_family(const Domain& d, std::vector<double> radii);

}  // namespace vexlab
