#include "vexlab/dictionary.hpp"

#include <algorithm>
#include <cmath>

#include "vexlab/fft.hpp"
#include "vexlab/random.hpp"

namespace vexlab {

Dictionary::Dictionary(std::vector<GridFunction> entries, std::vector<std::size_t> prefix_sizes,
                       std::uint64_t seed, std::string description)
    : entries_(std::move(entries)),
      prefix_sizes_(std::move(prefix_sizes)),
      seed_(seed),
      description_(std::move(description)) {
  if (entries_.empty()) throw Error("empty dictionary");
  for (const GridFunction& g : entries_)
    if (g.is_zero()) throw Error("dictionary entry is zero");
  if (prefix_sizes_.empty() || prefix_sizes_.back() != entries_.size())
    throw Error("dictionary prefixes must end at the full size");
  for (std::size_t i = 1; i < prefix_sizes_.size(); ++i)
    if (prefix_sizes_[i] <= prefix_sizes_[i - 1]) throw Error("dictionary prefixes must increase");
}

namespace {

Point random_point(const Domain& d, Rng& rng) {
  const double L = d.half_width();
  const double x = rng.uniform(-L, L);
  const double y = d.dim() == 2 ? rng.uniform(-L, L) : 0.0;
  return {x, y};
}

GridFunction indicator(const Domain& d, const Ball& b) {
  GridFunction g(d);
  for (std::size_t i : ball_members(d, b)) g[i] = 1.0;
  return g;
}

GridFunction gaussian(const Domain& d, const Point& c, double r) {
  return GridFunction::sample(d, [&](const Point& x) {
    const double q = periodic_distance(d, x, c) / r;
    return std::exp(-0.5 * q * q);
  });
}

void add_scale(const Domain& d, double r, Rng& rng, int random_per_scale,
               std::vector<GridFunction>& out) {
  const Point origin{0.0, 0.0};
  const Point beside{2.0 * r, 0.0};
  out.push_back(indicator(d, {origin, r}));
  out.push_back(indicator(d, {beside, r}));
  out.push_back(gaussian(d, origin, r));
  for (int k = 0; k < random_per_scale; ++k) {
    out.push_back(indicator(d, {random_point(d, rng), r}));
    out.push_back(gaussian(d, random_point(d, rng), r));
    GridFunction s(d);
    for (std::size_t i : ball_members(d, {random_point(d, rng), r}))
      s[i] = rng.sign() * rng.uniform(0.5, 1.0);
    out.push_back(std::move(s));
  }
}

}  // namespace

Dictionary standard_dictionary(const Domain& d, const DictionarySpec& spec) {
  if (spec.max_levels < 1) throw Error("dictionary needs at least one level");
  Rng rng(spec.seed);
  const double lo = d.spacing();
  const double hi = d.half_width();
  const double mid = std::sqrt(lo * hi);
  std::vector<GridFunction> entries;
  std::vector<std::size_t> prefixes;
  for (int j = 0; j < spec.max_levels; ++j) {
    const double up = mid * std::ldexp(1.0, j);
    const double down = mid * std::ldexp(1.0, -j);
    const std::size_t before = entries.size();
    if (up <= hi) add_scale(d, up, rng, spec.random_per_scale, entries);
    if (j > 0 && down >= lo) add_scale(d, down, rng, spec.random_per_scale, entries);
    if (entries.size() == before) break;
    prefixes.push_back(entries.size());
  }
  return Dictionary(std::move(entries), std::move(prefixes), spec.seed,
                    "indicators, gaussians and sign fields over middle-out dyadic scales");
}

GridFunction band_limited_field(const Domain& d, double lo, double hi, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cplx> spec(d.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double r = frequency_norm(d, i);
    if (r >= lo && r <= hi) spec[i] = cplx(rng.normal(), rng.normal());
  }
  fft_inverse(d, spec);
  std::vector<double> re(spec.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = spec[i].real();
  GridFunction g(d, std::span<const double>(re));
  // Taking the real part symmetrizes the spectrum inside the radial band.
  if (g.is_zero()) throw Error("band contains no lattice frequency");
  return g;
}

Dictionary band_limited_dictionary(const Domain& d, std::uint64_t seed, int per_level,
                                   int max_levels) {
  if (per_level < 1 || max_levels < 1) throw Error("dictionary needs at least one level");
  Rng rng(seed);
  const double base = 4.0 * d.min_frequency();
  const double nyquist = d.max_frequency();
  std::vector<GridFunction> entries;
  std::vector<std::size_t> prefixes;
  for (int j = 0; j < max_levels; ++j) {
    const double xi = base * std::ldexp(1.0, j);
    if (xi > nyquist / 2.0) break;
    for (int k = 0; k < per_level; ++k) {
      const Point c = random_point(d, rng);
      const double width = rng.uniform(2.0, 4.0) / xi;
      const double angle = d.dim() == 2 ? rng.uniform(0.0, 2.0 * std::numbers::pi) : 0.0;
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const Point dir{std::cos(angle), std::sin(angle)};
      GridFunction g = GridFunction::sample(d, [&](const Point& x) {
        const double q = periodic_distance(d, x, c) / width;
        // minimum-image displacement along dir
        double proj = 0.0;
        for (int a = 0; a < d.dim(); ++a) {
          double dx = std::remainder(x[a] - c[a], 2.0 * d.half_width());
          proj += dx * dir[a];
        }
        return std::exp(-0.5 * q * q) * std::cos(xi * proj + phase);
      });
      g = apply_symbol(g, [&](const Point& f) {
        const double r = std::hypot(f[0], f[1]);
        return cplx(r >= xi / 2.0 && r <= 2.0 * xi ? 1.0 : 0.0);
      });
      std::vector<double> re = g.real();
      GridFunction packet(d, std::span<const double>(re));
      if (!packet.is_zero()) entries.push_back(std::move(packet));
    }
    if (!entries.empty() && (prefixes.empty() || prefixes.back() != entries.size()))
      prefixes.push_back(entries.size());
  }
  return Dictionary(std::move(entries), std::move(prefixes), seed,
                    "band-limited wave packets over octave frequency levels");
}

}  // namespace vexlab
