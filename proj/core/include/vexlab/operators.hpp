#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "vexlab/dictionary.hpp"
#include "vexlab/grid.hpp"
#include "vexlab/luxemburg.hpp"
#include "vexlab/maximal.hpp"
#include "vexlab/paley.hpp"
#include "vexlab/trend.hpp"

namespace vexlab {

// Fourier multiplier T f = F^{-1}(m F f), m given on angular frequencies.
struct MultiplierOperator {
  std::string name;
  std::function<cplx(const Point&)> symbol;

  static MultiplierOperator identity();
  // -i sgn(xi_1) (1D)
  static MultiplierOperator hilbert();
  // -i xi_j / |xi|, j = 1, 2; zero at the origin
  static MultiplierOperator riesz(int j);
  // (1 - |eps xi|^2)_+^delta
  static MultiplierOperator bochner_riesz(double delta, double epsilon);
  // by config name: identity, hilbert, riesz1, riesz2
  static MultiplierOperator by_name(const std::string& name);
};

GridFunction apply_multiplier(const MultiplierOperator& T, const GridFunction& f);

struct KernelCheckReport {
  double estimate = 0.0;
  // (radius, running sup over |y| <= radius)
  std::vector<std::pair<double, double>> trend;
  TrendVerdict verdict = TrendVerdict::Inconclusive;
};

// Reconstructs k = F^{-1}(m w) with a Gaussian window w(xi) = exp(-|xi|^2 / 2 s^2),
// s = |xi|_max / sqrt(16 pi), and scans |k(x - y) - k(x)| |x|^{n+delta} / |y|^delta over
// lattice pairs with |y| >= 16h and |x| > 2|y|, |y| bounded by each radius of
// the grid in turn.
KernelCheckReport czo_kernel_check(const Domain& d, const MultiplierOperator& T, double delta,
                                   const std::vector<double>& radius_grid);

struct BochnerRieszSpec {
  double delta = 1.0;
  std::vector<double> epsilon_grid;

  // 32 geometric points on [h/8, 4L].
  static BochnerRieszSpec standard(const Domain& d, double delta);
};

GridFunction bochner_riesz(const GridFunction& f, const BochnerRieszSpec& spec, double epsilon);
GridFunction bochner_riesz_maximal(const GridFunction& f, const BochnerRieszSpec& spec);

enum class BoundednessTarget { HardyToHardy, HardyToLebesgue };

// max over entries of ||T g||_target / ||g||_{H^p_w}; entries with zero
// Hardy norm are skipped.
OperatorNormEstimate boundedness_probe(const Operator& T, const SpaceSpec& s, const Dictionary& D,
                                       BoundednessTarget target, const ScaleGrid& scales);

}  // namespace vexlab
