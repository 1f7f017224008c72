#include <gtest/gtest.h>

#include <cmath>

#include "vexlab/maximal.hpp"
#include "vexlab/random.hpp"
#include "vexlab/trend.hpp"

using namespace vexlab;

namespace {

std::vector<double> noise(const Domain& d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(d.size());
  for (double& x : v) x = std::abs(rng.normal()) * (rng.uniform() < 0.3 ? 5.0 : 1.0);
  return v;
}

// Every ball, members found by scanning the whole grid.
std::vector<double> brute_balls(std::span<const double> a, const Domain& d, std::span<const Ball> balls) {
  std::vector<double> out(a.begin(), a.end());
  for (const Ball& b : balls) {
    std::vector<std::size_t> in;
    double s = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (periodic_distance(d, d.point(i), b.center) < b.radius) {
        in.push_back(i);
        s += a[i];
      }
    if (in.empty()) continue;
    for (std::size_t i : in) out[i] = std::max(out[i], s / in.size());
  }
  return out;
}

// Every periodic run of 1..W consecutive samples.
std::vector<double> brute_windows(std::span<const double> a, int W) {
  const int n = static_cast<int>(a.size());
  std::vector<double> out(a.begin(), a.end());
  for (int s = 0; s < n; ++s) {
    double sum = 0.0;
    for (int w = 1; w <= W; ++w) {
      sum += a[(s + w - 1) % n];
      for (int k = 0; k < w; ++k) out[(s + k) % n] = std::max(out[(s + k) % n], sum / w);
    }
  }
  return out;
}

}  // namespace

TEST(HlMaximal, ConstantIsFixed) {
  const Domain d = Domain::make(1, 4.0, 64);
  for (const BallFamily& F : {window_family(d, 64), dyadic_family(d, 8, {0.5, 1.0, 4.0}), lattice_family(d, {0.3, 2.0})}) {
    const auto m = hl_maximal(GridFunction::constant(d, cplx(-3.0, 4.0)), F);
    for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(m[i].real(), 5.0, 1e-12);
  }
}

TEST(HlMaximal, IndicatorMatchesAllIntervalsScan) {
  const Domain d = Domain::make(1, 4.0, 512);
  const auto f = GridFunction::sample(d, [](const Point& x) { return x[0] >= 0.0 && x[0] < 1.0 ? 1.0 : 0.0; });
  const auto m = hl_maximal(f, window_family(d, 512));
  const auto brute = brute_windows(f.abs(), 512);
  double cont = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_NEAR(m[i].real(), brute[i], 1e-12);
    const double x = d.point(i)[0];
    // continuum value on the circle of length 8: 1 / shortest arc covering x and [0,1)
    const double right = std::fmod(x + 8.0, 8.0), left = std::fmod(1.0 - x + 8.0, 8.0);
    const double exact = (x >= 0.0 && x < 1.0) ? 1.0 : 1.0 / std::min(right, left);
    cont = std::max(cont, std::abs(m[i].real() - exact));
  }
  EXPECT_LT(cont, 2.0 * d.spacing());
}

TEST(HlMaximal, WindowFastPathMatchesGeneric) {
  const Domain d = Domain::make(1, 2.0, 128);
  const auto a = noise(d, 4);
  const auto F = window_family(d, 37);
  const BallFamily generic(d, std::vector<Ball>(F.balls().begin(), F.balls().end()));
  const auto fast = hl_maximal(a, F);
  const auto slow = hl_maximal(a, generic);
  const auto brute = brute_windows(a, 37);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(fast[i], brute[i], 1e-12);
    EXPECT_NEAR(slow[i], brute[i], 1e-12);
  }
}

TEST(HlMaximal, LatticeFastPathMatchesBrute) {
  const Domain d = Domain::make(2, 2.0, 32);
  const auto a = noise(d, 5);
  const auto F = lattice_family(d, {0.1, 0.3, 0.7, 1.9});
  const auto fast = hl_maximal(a, F);
  const auto brute = brute_balls(a, d, F.balls());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(fast[i], brute[i], 1e-10);
}

TEST(HlMaximal, SquareIndicatorFarPoint2D) {
  const Domain d = Domain::make(2, 4.0, 64);
  const auto f = GridFunction::sample(d, [](const Point& x) {
    return x[0] >= 0.0 && x[0] < 1.0 && x[1] >= 0.0 && x[1] < 1.0 ? 1.0 : 0.0;
  });
  const auto F = dyadic_family(d, 16, {0.25, 0.5, 1.0, 2.0, 4.0});
  const auto m = hl_maximal(f, F);
  const auto brute = brute_balls(f.abs(), d, F.balls());
  const std::size_t far = d.index(56, 60);
  EXPECT_GT(brute[far], 0.0);
  EXPECT_NEAR(m[far].real(), brute[far], 1e-12);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(m[i].real(), brute[i], 1e-12);
}

TEST(HlMaximal, DegenerateBallAndInvariants) {
  const Domain d = Domain::make(1, 2.0, 128);
  const auto a = noise(d, 6);
  const auto b = noise(d, 7);
  const auto small = dyadic_family(d, 4, {0.1});
  const auto big = dyadic_family(d, 4, {0.1, 0.5, 2.0});
  const auto ma = hl_maximal(a, small);
  const auto ma_big = hl_maximal(a, big);
  const auto mb = hl_maximal(b, small);
  std::vector<double> sum(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
  const auto ms = hl_maximal(sum, small);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_GE(ma[i], a[i]);
    EXPECT_LE(ma[i], ma_big[i]);
    EXPECT_LE(ms[i], ma[i] + mb[i] + 1e-12);
  }
  const GridFunction f(d, a);
  const auto m1 = hl_maximal(f, big);
  const auto m2 = hl_maximal(f * cplx(-2.5), big);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(m2[i].real(), 2.5 * m1[i].real(), 1e-12);
}

TEST(PoweredMaximal, Examples) {
  const Domain d = Domain::make(1, 2.0, 128);
  const auto F = window_family(d, 40);
  const auto c = powered_maximal(GridFunction::constant(d, -2.0), 0.3, F);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(c[i].real(), 2.0, 1e-12);
  const GridFunction f(d, noise(d, 8));
  const auto m = hl_maximal(f, F);
  const auto p1 = powered_maximal(f, 1.0, F);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(p1[i], m[i]);
  std::vector<double> root(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) root[i] = std::sqrt(std::abs(f[i]));
  const auto brute = brute_windows(root, 40);
  const auto half = powered_maximal(f, 0.5, F);
  const auto two = powered_maximal(f, 2.0, F);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_NEAR(half[i].real(), brute[i] * brute[i], 1e-12);
    EXPECT_LE(half[i].real(), m[i].real() + 1e-12);
    EXPECT_LE(m[i].real(), two[i].real() + 1e-12);
  }
}

TEST(FsVectorProbe, Examples) {
  const Domain d = Domain::make(1, 2.0, 128);
  const auto F = window_family(d, 32);
  const auto p = exponent_forms::sin_perturbed(d, 1.5, 1.0);
  const SpaceSpec s(p, weight_forms::shifted_power(d, 0.5));
  const GridFunction f(d, noise(d, 9));
  const GridFunction z(d);
  const double single = convexified_norm(hl_maximal(f, F), s, 1.5) / convexified_norm(f, s, 1.5);
  EXPECT_NEAR(fs_vector_probe({f, z, z}, 2.0, s, 1.5, F), single, 1e-10 * single);
  EXPECT_NEAR(fs_vector_probe({f, f, f, f}, 3.0, s, 1.5, F), single, 1e-10 * single);
  EXPECT_EQ(fs_vector_probe({z, z}, 2.0, s, 1.0, F), 0.0);
  EXPECT_THROW(fs_vector_probe({f}, 1.0, s, 1.0, F), Error);
}

TEST(FsVectorProbe, DisjointIndicatorsDirect) {
  const Domain d = Domain::make(1, 2.0, 128);
  const auto F = window_family(d, 128);
  const SpaceSpec s = SpaceSpec::unweighted(ExponentField::constant(d, 2.0));
  const auto f1 = GridFunction::sample(d, [](const Point& x) { return x[0] >= -1.5 && x[0] < -1.0 ? 1.0 : 0.0; });
  const auto f2 = GridFunction::sample(d, [](const Point& x) { return x[0] >= 0.5 && x[0] < 1.25 ? 2.0 : 0.0; });
  const auto m1 = brute_windows(f1.abs(), 128);
  const auto m2 = brute_windows(f2.abs(), 128);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    num += m1[i] * m1[i] + m2[i] * m2[i];
    den += std::norm(f1[i]) + std::norm(f2[i]);
  }
  EXPECT_NEAR(fs_vector_probe({f1, f2}, 2.0, s, 1.0, F), std::sqrt(num / den), 1e-10);
}

TEST(OperatorNorm, IdentityAndScalar) {
  const Domain d = Domain::make(1, 4.0, 128);
  const auto D = standard_dictionary(d);
  const SpaceSpec s(exponent_forms::sin_perturbed(d, 1.5, 1.0), weight_forms::shifted_power(d, 1.0));
  const auto id = operator_norm_estimate([](const GridFunction& g) { return g; }, s, D);
  EXPECT_EQ(id.value, 1.0);
  EXPECT_EQ(id.skipped, 0u);
  EXPECT_EQ(id.trend.size(), D.prefix_sizes().size());
  const auto sc = operator_norm_estimate([](const GridFunction& g) { return g * cplx(0.0, -3.0); }, s, D);
  EXPECT_NEAR(sc.value, 3.0, 1e-11);
}

TEST(OperatorNorm, MaximalOnL2IsStable) {
  const Domain d = Domain::make(1, 8.0, 256);
  const auto D = standard_dictionary(d);
  const auto F = window_family(d, 256);
  const SpaceSpec s = SpaceSpec::unweighted(ExponentField::constant(d, 2.0));
  const auto est = operator_norm_estimate([&](const GridFunction& g) { return hl_maximal(g, F); }, s, D);
  EXPECT_GE(est.value, 1.0);
  EXPECT_LT(est.value, 4.0);  // sharp L^2 bound for the uncentered operator is 1 + sqrt 2
  EXPECT_EQ(classify_trend(est.trend_values()), TrendVerdict::Stable);
  for (std::size_t i = 1; i < est.trend.size(); ++i) {
    EXPECT_GT(est.trend[i].first, est.trend[i - 1].first);
    EXPECT_GE(est.trend[i].second, est.trend[i - 1].second);
  }
  EXPECT_LT(est.argmax_entry, D.size());
}

TEST(OperatorNorm, SkipsZeroEntries) {
  const std::vector<double> r{1.0, NAN, 3.0, 2.0};
  const std::vector<std::size_t> pre{2, 4};
  const auto est = estimate_from_ratios(r, pre);
  EXPECT_EQ(est.value, 3.0);
  EXPECT_EQ(est.argmax_entry, 2u);
  EXPECT_EQ(est.skipped, 1u);
  EXPECT_FALSE(est.warnings.empty());
  ASSERT_EQ(est.trend.size(), 2u);
  EXPECT_EQ(est.trend[0].second, 1.0);
  EXPECT_EQ(est.trend[1].second, 3.0);
}

TEST(Dictionary, DeterministicAndNested) {
  const Domain d = Domain::make(2, 4.0, 32);
  const auto a = standard_dictionary(d, {.seed = 3});
  const auto b = standard_dictionary(d, {.seed = 3});
  const auto c = standard_dictionary(d, {.seed = 4});
  ASSERT_EQ(a.size(), b.size());
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) EXPECT_EQ(a[i][j], b[i][j]);
    EXPECT_FALSE(a[i].is_zero());
    for (std::size_t j = 0; j < d.size(); ++j) differs |= a[i][j] != c[i][j];
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(a.prefix_sizes().back(), a.size());
  EXPECT_THROW(Dictionary({}, {}, 1, "x"), Error);
}

TEST(Dictionary, BandLimitedSpectra) {
  const Domain d = Domain::make(1, 8.0, 256);
  const auto D = band_limited_dictionary(d, 2);
  EXPECT_GE(D.prefix_sizes().size(), 3u);
  for (const auto& g : D.entries()) {
    EXPECT_TRUE(g.is_real(1e-12));
    double mean = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) mean += g[i].real();
    EXPECT_NEAR(mean / g.size(), 0.0, 1e-12 * g.max_abs() + 1e-14);
  }
}
