#pragma once

#include <map>
#include <string>
#include <vector>

#include "vexlab/dictionary.hpp"
#include "vexlab/grid.hpp"
#include "vexlab/luxemburg.hpp"
#include "vexlab/mollifiers.hpp"
#include "vexlab/trend.hpp"

namespace vexlab {

// eta(r) = sigma(r - 1) (1 - sigma((r - 4) / 4)) with the exp(-1/x) smooth
// step sigma: equal to 1 on [2, 4] and supported in (1, 8).
struct AnnulusBump {
  double operator()(double r) const;
  static double smooth_step(double x);
};

// Geometric scales t_k = t_min rho^k, k = 0..K, weights log rho.
class ScaleGrid {
 public:
  ScaleGrid(double t_min, double ratio, int K);
  // rho = 2^{1/4}, t_min = 1 / (8 |xi|_max), t_K >= 8 / |xi|_min so every
  // annulus has left the lattice at the last scale.
  static ScaleGrid standard(const Domain& d);
  // Geometric scales with rho = sqrt(2) covering [2h, L], for mollifier
  // dilations (which need a few samples inside the support).
  static ScaleGrid mollifier(const Domain& d);

  const std::vector<double>& t() const { return t_; }
  double ratio() const { return ratio_; }
  double weight() const { return std::log(ratio_); }
  std::size_t size() const { return t_.size(); }

 private:
  std::vector<double> t_;
  double ratio_;
};

// F^{-1}(eta(t |xi|) F f)
GridFunction phi_tD(const GridFunction& f, double t, const AnnulusBump& bump = {});

// Lusin area function: sqrt(sum_k log rho t_k^{-n} sum_{|y-x|<t_k} h^n |phi(t_k D) f(y)|^2)
GridFunction lusin_area(const GridFunction& f, const ScaleGrid& scales, const AnnulusBump& bump = {});
GridFunction g_function(const GridFunction& f, const ScaleGrid& scales, const AnnulusBump& bump = {});
GridFunction g_lambda_star(const GridFunction& f, double lambda, const ScaleGrid& scales,
                           const AnnulusBump& bump = {});

// Cone sum of one scale: t^{-n} sum_{|z| < t} h^n u(x + z) (lattice offsets).
std::vector<double> cone_average(const Domain& d, std::span<const double> u, double t);
// max over lattice offsets |z| < t of u(x + z); offset 0 always included.
std::vector<double> disc_max_filter(const Domain& d, std::span<const double> u, double t);

// sup over scales and |y - x| < t of |f * phi_t(y)|.
GridFunction nontangential_maximal(const GridFunction& f, const Mollifier& phi, const ScaleGrid& scales);
// sup over scales of |f * phi_t(x)|.
GridFunction radial_maximal(const GridFunction& f, const Mollifier& phi, const ScaleGrid& scales);
// Pointwise max of nontangential_maximal over a SchwartzN dictionary: a lower
// bound for the grand maximal function.
GridFunction grand_maximal(const GridFunction& f, const MollifierDictionary& dict, const ScaleGrid& scales);

enum class SquareKind { G, GLambdaStar, S };

struct SquareSpec {
  SquareKind kind = SquareKind::S;
  double lambda = 0.0;  // GLambdaStar only
};

// Square function of the family |f * phi_t| for one mollifier (moments of
// order <= moment_degree projected out at every scale when >= 0).
GridFunction mollifier_square(const GridFunction& f, const Mollifier& phi, int moment_degree,
                              const SquareSpec& spec, const ScaleGrid& scales);
// Intrinsic square function: A(y, t) = max over entries of |f * phi_t(y)|,
// aggregated as g, g_lambda* or S. Every entry is validated first; failure
// throws "not a 𝒞_{α,d} member".
GridFunction intrinsic_square(const GridFunction& f, const MollifierDictionary& dict, const SquareSpec& spec,
                              const ScaleGrid& scales);

// || S(f) ||_{L^p_w}
double hardy_norm(const GridFunction& f, const SpaceSpec& s, const ScaleGrid& scales,
                  const AnnulusBump& bump = {});

struct CharacterizationConfig {
  double lambda = 3.0;
  double s = 1.0;  // index used for the hypothesis checks
  int schwartz_order = 2;
  double alpha = 1.0;
  int d = 0;
  bool include_intrinsic = true;
};

struct CharacterizationReport {
  // functional name -> per-entry norm
  std::map<std::string, std::vector<double>> norms;
  // functional name -> (min, max) of norm / ||S f|| over the dictionary
  std::map<std::string, std::pair<double, double>> ratio_band;
  // per dictionary prefix: the widest max/min ratio over all functionals
  std::vector<std::pair<std::size_t, double>> band_trend;
  TrendVerdict band_verdict = TrendVerdict::Inconclusive;
  std::vector<std::string> warnings;
};

CharacterizationReport characterization_probe(const Dictionary& D, const SpaceSpec& s,
                                              const CharacterizationConfig& cfg = {});

}  // namespace vexlab
