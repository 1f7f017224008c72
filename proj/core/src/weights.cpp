#include "vexlab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vexlab/parallel.hpp"

namespace vexlab {

std::vector<double> ApReport::trend_values() const {
  std::vector<double> v;
  for (const auto& [cap, value] : trend) v.push_back(value);
  return v;
}

TrendVerdict ApReport::verdict(const TrendThresholds& t) const { return classify_trend(trend_values(), t); }

namespace {

// Per-ball ratios reduced to the running max over radius caps. Balls past
// the last cap still count toward the estimate.
ApReport reduce_over_caps(const BallFamily& F, std::span<const double> ratio) {
  const auto balls = F.balls();
  ApReport rep;
  std::size_t arg = 0;
  for (std::size_t b = 1; b < balls.size(); ++b)
    if (ratio[b] > ratio[arg]) arg = b;
  rep.constant_estimate = ratio[arg];
  rep.argmax_ball = balls[arg];
  for (double cap : radius_caps(F)) {
    double best = 0.0;
    for (std::size_t b = 0; b < balls.size(); ++b)
      if (balls[b].radius <= cap) best = std::max(best, ratio[b]);
    rep.trend.emplace_back(cap, best);
  }
  return rep;
}

}  // namespace

ApReport classical_ap_constant(const WeightField& w, double p, const BallFamily& F) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error("p must satisfy 1 <= p < inf");
  if (!(w.domain() == F.domain())) throw Error("domain mismatch");
  const Domain& d = w.domain();
  const auto balls = F.balls();
  std::vector<double> dual(w.size());
  if (p > 1.0) {
    const double e = 1.0 - p / (p - 1.0);
    for (std::size_t i = 0; i < dual.size(); ++i) dual[i] = std::pow(w[i], e);
  }
  std::vector<double> ratio(balls.size());
  parallel_for(balls.size(), [&](std::size_t b) {
    const auto members = ball_members(d, balls[b]);
    if (members.empty()) throw Error("empty ball");
    double sw = 0.0, sd = 0.0, inv_max = 0.0;
    for (std::size_t i : members) {
      sw += w[i];
      if (p > 1.0)
        sd += dual[i];
      else
        inv_max = std::max(inv_max, 1.0 / w[i]);
    }
    const double n = static_cast<double>(members.size());
    ratio[b] = p > 1.0 ? (sw / n) * std::pow(sd / n, p - 1.0) : (sw / n) * inv_max;
  });
  return reduce_over_caps(F, ratio);
}

ApReport variable_ap_constant(const WeightField& w, const ExponentField& p, const BallFamily& F) {
  if (!(w.domain() == p.domain()) || !(w.domain() == F.domain())) throw Error("domain mismatch");
  const ExponentField pc = conjugate(p);
  const Domain& d = w.domain();
  const auto balls = F.balls();
  std::vector<double> ratio(balls.size());
  parallel_for(balls.size(), [&](std::size_t b) {
    const auto members = ball_members(d, balls[b]);
    if (members.empty()) throw Error("empty ball");
    std::vector<double> a, c, pa, pca;
    for (std::size_t i : members) {
      a.push_back(w[i]);
      c.push_back(1.0 / w[i]);
      pa.push_back(p[i]);
      pca.push_back(pc[i]);
    }
    const double h = d.cell_volume();
    ratio[b] = luxemburg_norm(a, pa, h) * luxemburg_norm(c, pca, h) / (h * static_cast<double>(members.size()));
  });
  return reduce_over_caps(F, ratio);
}

std::string_view to_string(MembershipVerdict v) {
  switch (v) {
    case MembershipVerdict::Consistent: return "consistent-with-membership";
    case MembershipVerdict::Inconsistent: return "inconsistent";
    case MembershipVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

void condition_i(const WeightField& w, const ExponentField& p, const BallFamily& F, WProbeReport& rep) {
  const Domain& d = w.domain();
  const double ps = p.p_star();
  const ExponentField q = scale(p, 1.0 / ps);
  const WeightField wp = w.power(ps);
  const WeightField wm = w.power(-ps);
  const bool sup_dual = q.is_constant() && q.p_minus() == 1.0;
  const bool dual_ok = q.p_minus() > 1.0;
  std::optional<ExponentField> qc;
  if (dual_ok) qc = conjugate(q);

  const auto balls = F.balls();
  rep.condition_i_norms.assign(balls.size(), 0.0);
  rep.condition_i_dual_norms.assign(balls.size(), 0.0);
  parallel_for(balls.size(), [&](std::size_t b) {
    const auto members = ball_members(d, balls[b]);
    std::vector<double> a, c, qa, qca;
    double cmax = 0.0;
    for (std::size_t i : members) {
      a.push_back(wp[i]);
      c.push_back(wm[i]);
      qa.push_back(q[i]);
      if (qc) qca.push_back((*qc)[i]);
      cmax = std::max(cmax, wm[i]);
    }
    rep.condition_i_norms[b] = luxemburg_norm(a, qa, d.cell_volume());
    if (sup_dual)
      rep.condition_i_dual_norms[b] = cmax;
    else if (dual_ok)
      rep.condition_i_dual_norms[b] = luxemburg_norm(c, qca, d.cell_volume());
    else
      rep.condition_i_dual_norms[b] = std::numeric_limits<double>::quiet_NaN();
  });
  rep.condition_i_finite = true;
  for (std::size_t b = 0; b < balls.size(); ++b)
    if (!std::isfinite(rep.condition_i_norms[b]) || !std::isfinite(rep.condition_i_dual_norms[b]))
      rep.condition_i_finite = false;
}

}  // namespace

WProbeReport w_membership_probe(const WeightField& w, const ExponentField& p, const BallFamily& F,
                                const Dictionary& D, const WProbeOptions& opt) {
  if (!(w.domain() == p.domain()) || !(w.domain() == F.domain())) throw Error("domain mismatch");
  for (double s : opt.s_grid)
    if (!(s > 1.0)) throw Error("s grid values must exceed 1");
  for (double k : opt.kappa_grid)
    if (!(k > 1.0)) throw Error("kappa grid values must exceed 1");
  if (opt.s_grid.empty() || opt.kappa_grid.empty()) throw Error("empty probe grid");

  WProbeReport rep;
  rep.s_grid = opt.s_grid;
  rep.kappa_grid = opt.kappa_grid;
  std::sort(rep.s_grid.begin(), rep.s_grid.end());
  std::sort(rep.kappa_grid.begin(), rep.kappa_grid.end());
  condition_i(w, p, F, rep);

  // M g does not depend on the cell; neither does its restriction to the
  // radius caps.
  const auto caps = radius_caps(F);
  std::vector<BallFamily> capped;
  for (double c : caps) capped.push_back(F.capped(c));
  std::vector<std::vector<double>> g_abs(D.size()), mg(D.size());
  std::vector<std::vector<std::vector<double>>> mg_cap(caps.size(), std::vector<std::vector<double>>(D.size()));
  parallel_for(D.size(), [&](std::size_t i) {
    g_abs[i] = D[i].abs();
    mg[i] = hl_maximal(g_abs[i], F);
    for (std::size_t c = 0; c < caps.size(); ++c) mg_cap[c][i] = hl_maximal(g_abs[i], capped[c]);
  });

  const std::size_t ns = rep.s_grid.size(), nk = rep.kappa_grid.size();
  rep.cells.resize(ns * nk);
  for (std::size_t si = 0; si < ns; ++si) {
    const double s = rep.s_grid[si];
    const bool valid = s * p.p_minus() > 1.0;
    std::optional<SpaceSpec> base;
    if (valid) base.emplace(conjugate(scale(p, s)), w.power(-1.0 / s));
    for (std::size_t ki = 0; ki < nk; ++ki) {
      WProbeCell& cell = rep.cells[si * nk + ki];
      cell.s = s;
      cell.kappa = rep.kappa_grid[ki];
      cell.valid = valid;
      if (!valid) {
        cell.reason = "s * p_- <= 1: conjugate exponent is infinite";
        continue;
      }
      const double theta = 1.0 / cell.kappa;
      std::vector<double> ratios(D.size());
      std::vector<std::vector<double>> cap_ratios(caps.size(), std::vector<double>(D.size(), 0.0));
      parallel_for(D.size(), [&](std::size_t i) {
        const double den = convexified_norm(g_abs[i], *base, theta);
        if (den == 0.0) {
          ratios[i] = std::numeric_limits<double>::quiet_NaN();
          return;
        }
        ratios[i] = convexified_norm(mg[i], *base, theta) / den;
        for (std::size_t c = 0; c < caps.size(); ++c)
          cap_ratios[c][i] = convexified_norm(mg_cap[c][i], *base, theta) / den;
      });
      cell.estimate = estimate_from_ratios(ratios, D.prefix_sizes());
      std::vector<double> cap_values;
      for (std::size_t c = 0; c < caps.size(); ++c) {
        cap_values.push_back(*std::max_element(cap_ratios[c].begin(), cap_ratios[c].end()));
        cell.cap_trend.emplace_back(caps[c], cap_values.back());
      }
      cell.dictionary_verdict = classify_trend(cell.estimate.trend_values(), opt.thresholds);
      cell.cap_verdict = classify_trend(cap_values, opt.thresholds);
      if (cell.dictionary_verdict == TrendVerdict::Growing || cell.cap_verdict == TrendVerdict::Growing)
        cell.verdict = TrendVerdict::Growing;
      else if (cell.dictionary_verdict == TrendVerdict::Stable)
        cell.verdict = TrendVerdict::Stable;
      else
        cell.verdict = TrendVerdict::Inconclusive;
    }
  }

  rep.kappa_estimate.assign(ns, std::nullopt);
  bool any_stable = false, any_growing = false;
  for (std::size_t si = 0; si < ns; ++si) {
    for (std::size_t ki = 0; ki < nk; ++ki) {
      const WProbeCell& c = rep.cell(si, ki);
      if (!c.valid) continue;
      if (c.verdict == TrendVerdict::Stable) {
        any_stable = true;
        rep.kappa_estimate[si] = c.kappa;
      }
      if (c.verdict == TrendVerdict::Growing) any_growing = true;
    }
    if (!rep.s_omega_estimate && rep.cell(si, 0).valid && rep.cell(si, 0).verdict == TrendVerdict::Stable)
      rep.s_omega_estimate = rep.s_grid[si];
  }
  rep.verdict = any_stable    ? MembershipVerdict::Consistent
                : any_growing ? MembershipVerdict::Inconsistent
                              : MembershipVerdict::Inconclusive;
  return rep;
}

Relation1Report check_relation1(const WeightField& w, const ExponentField& p, const BallFamily& F,
                                const Dictionary& D, const Relation1Options& opt) {
  if (!(p.p_minus() > 1.0)) throw Error("conjugate requires p₋ > 1");
  Relation1Report rep;
  rep.log_holder = log_holder_diagnostic(p, opt.log_holder_refinements);
  std::vector<double> lh;
  for (const auto& [scale, v] : rep.log_holder.trend) lh.push_back(v);
  rep.log_holder_verdict = classify_trend(lh, opt.probe.thresholds);
  rep.variable_ap = variable_ap_constant(w, p, F);
  rep.variable_ap_verdict = rep.variable_ap.verdict(opt.probe.thresholds);
  rep.membership = w_membership_probe(w, p, F, D, opt.probe);
  rep.violation = rep.log_holder_verdict == TrendVerdict::Stable &&
                  rep.variable_ap_verdict == TrendVerdict::Stable &&
                  rep.membership.verdict == MembershipVerdict::Inconsistent;
  return rep;
}

Relation3Report check_relation3(const WeightField& w, const ExponentField& p, double s,
                                const BallFamily& F, const WProbeReport* probe,
                                const TrendThresholds& t) {
  if (!(p.p_minus() >= 1.0)) throw Error("relation 3 requires p_- >= 1");
  if (!(s > 1.0)) throw Error("s must exceed 1");
  Relation3Report rep;
  rep.s_used = s;
  if (probe) {
    rep.membership = probe->verdict;
    if (probe->s_omega_estimate) rep.s_used = *probe->s_omega_estimate;
  }
  rep.variable_ap = variable_ap_constant(w.power(1.0 / rep.s_used), scale(p, rep.s_used), F);
  rep.verdict = rep.variable_ap.verdict(t);
  const bool growing = rep.verdict == TrendVerdict::Growing;
  rep.violation = probe ? (growing && probe->verdict == MembershipVerdict::Consistent) : growing;
  return rep;
}

}  // namespace vexlab
