#include <benchmark/benchmark.h>

#include <cmath>

#include "vexlab/luxemburg.hpp"
#include "vexlab/maximal.hpp"
#include "vexlab/paley.hpp"
#include "vexlab/random.hpp"

using namespace vexlab;

namespace {

GridFunction noise(const Domain& d, std::uint64_t seed) {
  Rng rng(seed);
  return GridFunction::sample(d, [&](const Point&) { return rng.normal(); });
}

void BM_MaximalWindows(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Domain d = Domain::make(1, 8.0, n);
  const auto F = window_family(d, n);
  const auto f = noise(d, 1);
  for (auto _ : st) benchmark::DoNotOptimize(hl_maximal(f, F));
  st.SetComplexityN(n);
}
BENCHMARK(BM_MaximalWindows)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

void BM_MaximalLattice2D(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Domain d = Domain::make(2, 4.0, n);
  std::vector<double> radii;
  for (double r = d.spacing(); r <= 2.0; r *= 2.0) radii.push_back(r);
  const auto F = lattice_family(d, radii);
  const auto f = noise(d, 2);
  for (auto _ : st) benchmark::DoNotOptimize(hl_maximal(f, F));
}
BENCHMARK(BM_MaximalLattice2D)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_LusinArea(benchmark::State& st) {
  const int dim = static_cast<int>(st.range(0)), n = static_cast<int>(st.range(1));
  const Domain d = Domain::make(dim, dim == 1 ? 8.0 : 4.0, n);
  const auto sg = ScaleGrid::standard(d);
  const auto f = noise(d, 3);
  for (auto _ : st) benchmark::DoNotOptimize(lusin_area(f, sg));
}
BENCHMARK(BM_LusinArea)->Args({1, 256})->Args({1, 1024})->Args({2, 64})->Args({2, 128})->Unit(benchmark::kMillisecond);

void BM_GLambdaStar(benchmark::State& st) {
  const Domain d = Domain::make(1, 8.0, static_cast<int>(st.range(0)));
  const auto sg = ScaleGrid::standard(d);
  const auto f = noise(d, 4);
  for (auto _ : st) benchmark::DoNotOptimize(g_lambda_star(f, 3.0, sg));
}
BENCHMARK(BM_GLambdaStar)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_LuxemburgVariable(benchmark::State& st) {
  const Domain d = Domain::make(1, 8.0, static_cast<int>(st.range(0)));
  const auto p = ExponentField::sample(d, [](const Point& x) { return 1.5 + std::pow(std::sin(x[0]), 2); });
  const auto f = noise(d, 5);
  for (auto _ : st) benchmark::DoNotOptimize(luxemburg_norm(f, p));
}
BENCHMARK(BM_LuxemburgVariable)->Arg(256)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
