#include <gtest/gtest.h>

#include <cmath>

#include "vexlab/weights.hpp"

using namespace vexlab;

namespace {

const Domain kLine = Domain::make(1, 4.0, 256);

std::vector<double> dyadic_radii(const Domain& d, int count) {
  std::vector<double> r;
  for (int k = 0; k < count; ++k) r.push_back(d.spacing() * std::ldexp(1.0, k));
  return r;
}

std::vector<std::size_t> members(const Domain& d, const Ball& b) {
  std::vector<std::size_t> in;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (periodic_distance(d, d.point(i), b.center) < b.radius) in.push_back(i);
  return in;
}

// Exhaustive classical A_p scan with members found by a full-grid sweep.
double scan_classical(const WeightField& w, double p, const BallFamily& F) {
  const double pc = p / (p - 1.0);
  double best = 0.0;
  for (const Ball& b : F.balls()) {
    const auto in = members(F.domain(), b);
    double a = 0.0, c = 0.0;
    for (std::size_t i : in) {
      a += w[i];
      c += std::pow(w[i], 1.0 - pc);
    }
    best = std::max(best, (a / in.size()) * std::pow(c / in.size(), p - 1.0));
  }
  return best;
}

}  // namespace

TEST(ClassicalAp, UnitWeightIsExactlyOne) {
  const auto F = dyadic_family(kLine, 16, dyadic_radii(kLine, 8));
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    const auto rep = classical_ap_constant(WeightField::constant(kLine, 1.0), p, F);
    EXPECT_EQ(rep.constant_estimate, 1.0) << p;
    EXPECT_EQ(rep.verdict(), TrendVerdict::Stable);
  }
}

TEST(ClassicalAp, PowerWeightsStableVersusGrowing) {
  const Domain d = Domain::make(1, 4.0, 1024);
  const auto F = dyadic_family(d, 64, dyadic_radii(d, 10));
  const auto good = classical_ap_constant(weight_forms::power(d, 0.5), 2.0, F);
  EXPECT_EQ(good.verdict(), TrendVerdict::Stable);
  EXPECT_LT(good.constant_estimate, 3.0);
  const auto bad = classical_ap_constant(weight_forms::power(d, 1.5), 2.0, F);
  EXPECT_EQ(bad.verdict(), TrendVerdict::Growing);
  // nondecreasing in the radius cap
  for (std::size_t i = 1; i < bad.trend.size(); ++i) {
    EXPECT_GT(bad.trend[i].first, bad.trend[i - 1].first);
    EXPECT_GE(bad.trend[i].second, bad.trend[i - 1].second);
  }
}

TEST(ClassicalAp, StepWeightMatchesExhaustiveScan) {
  const auto F = dyadic_family(kLine, 32, dyadic_radii(kLine, 7));
  const auto w = weight_forms::step(kLine, 1.0);
  const auto rep = classical_ap_constant(w, 2.0, F);
  EXPECT_NEAR(rep.constant_estimate, scan_classical(w, 2.0, F), 1e-12);
  EXPECT_GE(rep.constant_estimate, 1.0);
}

TEST(ClassicalAp, ScaleInvariantAndFamilyMonotone) {
  const auto w = weight_forms::shifted_power(kLine, 0.7);
  const auto small = dyadic_family(kLine, 8, dyadic_radii(kLine, 4));
  const auto big = dyadic_family(kLine, 16, dyadic_radii(kLine, 8));
  for (double p : {1.0, 3.0}) {
    const double a = classical_ap_constant(w, p, small).constant_estimate;
    EXPECT_NEAR(classical_ap_constant(w.scaled(7.5), p, small).constant_estimate, a, 1e-12 * a);
    EXPECT_GE(classical_ap_constant(w, p, big).constant_estimate, a);
    EXPECT_GE(a, 1.0);
  }
  EXPECT_THROW(classical_ap_constant(w, 0.5, small), Error);
}

TEST(VariableAp, UnitWeight) {
  const auto F = dyadic_family(kLine, 16, dyadic_radii(kLine, 8));
  const auto rep = variable_ap_constant(WeightField::constant(kLine, 1.0), ExponentField::constant(kLine, 2.0), F);
  EXPECT_NEAR(rep.constant_estimate, 1.0, 1e-10);
}

TEST(VariableAp, ConstantExponentConsistency) {
  const auto F = dyadic_family(kLine, 16, dyadic_radii(kLine, 8));
  for (const auto& w : {weight_forms::power(kLine, 0.25), weight_forms::shifted_power(kLine, 1.0), weight_forms::step(kLine, 2.0)})
    for (double p : {1.5, 3.0}) {
      const double v = variable_ap_constant(w, ExponentField::constant(kLine, p), F).constant_estimate;
      const double c = std::pow(classical_ap_constant(w.power(p), p, F).constant_estimate, 1.0 / p);
      EXPECT_NEAR(v, c, 1e-8) << p;
    }
}

TEST(VariableAp, VariableExponentMatchesScan) {
  const auto F = dyadic_family(kLine, 8, dyadic_radii(kLine, 8));
  const auto p = exponent_forms::sin_perturbed(kLine, 2.0, 1.0);
  const auto w = weight_forms::shifted_power(kLine, 1.0);
  const auto pc = conjugate(p);
  double best = 0.0;
  for (const Ball& b : F.balls()) {
    GridFunction a(kLine), c(kLine);
    const auto in = members(kLine, b);
    for (std::size_t i : in) {
      a[i] = w[i];
      c[i] = 1.0 / w[i];
    }
    best = std::max(best, luxemburg_norm(a, p) * luxemburg_norm(c, pc) / (in.size() * kLine.cell_volume()));
  }
  EXPECT_NEAR(variable_ap_constant(w, p, F).constant_estimate, best, 1e-12 * best);
  EXPECT_THROW(variable_ap_constant(w, ExponentField::constant(kLine, 1.0), F), Error);
}

class Probe : public ::testing::Test {
 protected:
  const Domain d = Domain::make(1, 8.0, 256);
  const BallFamily F = window_family(d, 256);
  const Dictionary D = standard_dictionary(d);
};

TEST_F(Probe, UnweightedL2) {
  const auto rep = w_membership_probe(WeightField::constant(d, 1.0), ExponentField::constant(d, 2.0), F, D);
  ASSERT_TRUE(rep.s_omega_estimate.has_value());
  EXPECT_EQ(*rep.s_omega_estimate, rep.s_grid.front());
  ASSERT_TRUE(rep.kappa_estimate.front().has_value());
  // kappa near 2, within one grid step
  const double k = *rep.kappa_estimate.front();
  EXPECT_GE(k, 1.5);
  EXPECT_LE(k, 3.0);
  EXPECT_EQ(rep.verdict, MembershipVerdict::Consistent);
  EXPECT_TRUE(rep.condition_i_finite);
  EXPECT_EQ(rep.condition_i_norms.size(), F.size());
  EXPECT_EQ(rep.cells.size(), rep.s_grid.size() * rep.kappa_grid.size());
}

TEST_F(Probe, HalfExponent) {
  const auto rep = w_membership_probe(WeightField::constant(d, 1.0), ExponentField::constant(d, 0.5), F, D);
  for (std::size_t si = 0; si < rep.s_grid.size(); ++si) {
    const auto& c = rep.cell(si, 0);
    if (rep.s_grid[si] <= 2.0) {
      EXPECT_FALSE(c.valid) << rep.s_grid[si];
      EXPECT_FALSE(c.reason.empty());
    } else {
      EXPECT_TRUE(c.valid);
      EXPECT_EQ(c.verdict, TrendVerdict::Stable);
    }
  }
  ASSERT_TRUE(rep.s_omega_estimate.has_value());
  EXPECT_EQ(*rep.s_omega_estimate, 3.0);
  EXPECT_EQ(rep.verdict, MembershipVerdict::Consistent);
}

TEST_F(Probe, SteepPowerIsInconsistent) {
  const auto rep = w_membership_probe(weight_forms::power(d, 5.0), ExponentField::constant(d, 2.0), F, D);
  EXPECT_EQ(rep.verdict, MembershipVerdict::Inconsistent);
  EXPECT_FALSE(rep.s_omega_estimate.has_value());
}

TEST_F(Probe, Relation1Scenarios) {
  const auto r1 = check_relation1(WeightField::constant(d, 1.0), ExponentField::constant(d, 2.0), F, D);
  EXPECT_FALSE(r1.violation);
  EXPECT_NEAR(r1.variable_ap.constant_estimate, 1.0, 1e-10);
  const auto r2 = check_relation1(weight_forms::power(d, 0.25), ExponentField::constant(d, 2.0), F, D);
  EXPECT_FALSE(r2.violation);
  EXPECT_EQ(r2.membership.verdict, MembershipVerdict::Consistent);
  const auto p = exponent_forms::sin_perturbed(d, 2.0, 1.0);
  const auto r3 = check_relation1(weight_forms::shifted_power(d, 0.1), p, F, D);
  EXPECT_FALSE(r3.violation);
  EXPECT_EQ(r3.log_holder_verdict, TrendVerdict::Stable);
  EXPECT_EQ(r3.membership.verdict, MembershipVerdict::Consistent);
}

TEST_F(Probe, Relation3Scenarios) {
  const auto p2 = ExponentField::constant(d, 2.0);
  const auto one = check_relation3(WeightField::constant(d, 1.0), p2, 1.5, F);
  EXPECT_NEAR(one.variable_ap.constant_estimate, 1.0, 1e-10);
  EXPECT_FALSE(one.violation);
  const auto w = weight_forms::power(d, 0.25);
  const auto probe = w_membership_probe(w, p2, F, D);
  const auto good = check_relation3(w, p2, 2.0, F, &probe);
  ASSERT_TRUE(probe.s_omega_estimate.has_value());
  EXPECT_EQ(good.s_used, *probe.s_omega_estimate);
  EXPECT_EQ(good.verdict, TrendVerdict::Stable);
  EXPECT_FALSE(good.violation);
  const auto steep = weight_forms::power(d, 5.0);
  const auto bad_probe = w_membership_probe(steep, p2, F, D);
  const auto bad = check_relation3(steep, p2, 2.0, F, &bad_probe);
  EXPECT_EQ(bad.s_used, 2.0);
  EXPECT_EQ(bad.verdict, TrendVerdict::Growing);
  EXPECT_EQ(bad.membership, MembershipVerdict::Inconsistent);
  EXPECT_FALSE(bad.violation);
}

TEST(MembershipVerdict, Names) {
  EXPECT_EQ(to_string(MembershipVerdict::Consistent), "consistent-with-membership");
  EXPECT_EQ(to_string(MembershipVerdict::Inconsistent), "inconsistent");
  EXPECT_EQ(to_string(MembershipVerdict::Inconclusive), "inconclusive");
}

TEST_F(Probe, RejectsBadGrids) {
  WProbeOptions opt;
  opt.kappa_grid = {1.0, 2.0};
  EXPECT_THROW(w_membership_probe(WeightField::constant(d, 1.0), ExponentField::constant(d, 2.0),
                                  F, D, opt),
               Error);
  opt.kappa_grid = {2.0};
  opt.s_grid = {0.5};
  EXPECT_THROW(w_membership_probe(WeightField::constant(d, 1.0), ExponentField::constant(d, 2.0),
                                  F, D, opt),
               Error);
}
