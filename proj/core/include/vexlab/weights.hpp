#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vexlab/dictionary.hpp"
#include "vexlab/exponents.hpp"
#include "vexlab/grid.hpp"
#include "vexlab/luxemburg.hpp"
#include "vexlab/maximal.hpp"
#include "vexlab/trend.hpp"

namespace vexlab {

struct ApReport {
  double constant_estimate = 0.0;
  Ball argmax_ball;
  // (radius cap, max over balls of radius <= cap); nondecreasing
  std::vector<std::pair<double, double>> trend;

  std::vector<double> trend_values() const;
  TrendVerdict verdict(const TrendThresholds& t = {}) const;
};

// p > 1: max over B of avg_B(w) avg_B(w^{1 - p'})^{p - 1};
// p = 1: max over B of avg_B(w) max_B(1 / w). Point-count averages.
ApReport classical_ap_constant(const WeightField& w, double p, const BallFamily& F);

// max over B of ||w 1_B||_{L^p} ||w^{-1} 1_B||_{L^{p'}} / |B|, with
// |B| = h^dim * (point count). Requires p_- > 1.
ApReport variable_ap_constant(const WeightField& w, const ExponentField& p, const BallFamily& F);

enum class MembershipVerdict { Consistent, Inconsistent, Inconclusive };
std::string_view to_string(MembershipVerdict v);

struct WProbeCell {
  double s = 0.0;
  double kappa = 0.0;
  bool valid = false;
  std::string reason;  // why the cell is invalid
  OperatorNormEstimate estimate;  // full family, trend over dictionary prefixes
  // (radius cap, max ratio with M restricted to balls of radius <= cap)
  std::vector<std::pair<double, double>> cap_trend;
  TrendVerdict dictionary_verdict = TrendVerdict::Inconclusive;
  TrendVerdict cap_verdict = TrendVerdict::Inconclusive;
  // growing if either trend grows; otherwise the dictionary trend decides.
  // The cap trend creeps toward its limit too slowly near the critical
  // index to be asked for stability, so it only vetoes.
  TrendVerdict verdict = TrendVerdict::Inconclusive;
};

struct WProbeReport {
  std::vector<double> s_grid;
  std::vector<double> kappa_grid;
  std::vector<WProbeCell> cells;  // s-major
  std::optional<double> s_omega_estimate;
  std::vector<std::optional<double>> kappa_estimate;  // per s
  // Ball-norm tables of the local condition, one entry per ball of F. The
  // dual table uses the sup norm when p / p_* == 1 identically and is NaN
  // where p / p_* touches 1 without being constant.
  std::vector<double> condition_i_norms;
  std::vector<double> condition_i_dual_norms;
  bool condition_i_finite = false;
  MembershipVerdict verdict = MembershipVerdict::Inconclusive;

  const WProbeCell& cell(std::size_t si, std::size_t ki) const { return cells[si * kappa_grid.size() + ki]; }
};

struct WProbeOptions {
  std::vector<double> s_grid{1.05, 1.1, 1.2, 1.4, 2.0, 3.0};
  std::vector<double> kappa_grid{1.05, 1.2, 1.5, 2.0, 3.0};
  TrendThresholds thresholds;
};

/**
 * Cell (s, kappa): estimate the norm of M on L^{(sp)'/kappa}_{w^{-kappa/s}}
 * over D, measuring through convexified_norm with base (( s p)', w^{-1/s})
 * and theta = 1/kappa. Each cell is read both along dictionary prefixes and
 * along the radius caps of F. A cell is invalid when s p_- <= 1.
 *
 * s_omega = least s whose smallest-kappa cell is stable; kappa(s) = largest
 * stable kappa. Verdict: consistent if any cell is stable; inconsistent if
 * none is and some valid cell grows; inconclusive otherwise.
 */
WProbeReport w_membership_probe(const WeightField& w, const ExponentField& p, const BallFamily& F,
                                const Dictionary& D, const WProbeOptions& opt = {});

struct Relation1Report {
  LogHolderDiagnostic log_holder;
  TrendVerdict log_holder_verdict = TrendVerdict::Inconclusive;
  ApReport variable_ap;
  TrendVerdict variable_ap_verdict = TrendVerdict::Inconclusive;
  WProbeReport membership;
  bool violation = false;
};

struct Relation1Options {
  int log_holder_refinements = 6;
  WProbeOptions probe;
};

// Violation only if log-Hölder and A_{p(.)} trends are stable while the
// membership probe is inconsistent.
Relation1Report check_relation1(const WeightField& w, const ExponentField& p, const BallFamily& F,
                                const Dictionary& D, const Relation1Options& opt = {});

struct Relation3Report {
  double s_used = 0.0;
  ApReport variable_ap;
  TrendVerdict verdict = TrendVerdict::Inconclusive;
  std::optional<MembershipVerdict> membership;
  bool violation = false;
};

// A_{s p(.)} constant of w^{1/s}. s is taken from the probe's s_omega when
// one is supplied and available. With a probe the violation signal needs a
// consistent membership verdict together with a growing trend; without one,
// growth alone raises it.
Relation3Report check_relation3(const WeightField& w, const ExponentField& p, double s,
                                const BallFamily& F, const WProbeReport* probe = nullptr,
                                const TrendThresholds& t = {});

}  // namespace vexlab
