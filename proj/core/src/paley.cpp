#include "vexlab/paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "filters.hpp"
#include "vexlab/fft.hpp"
#include "vexlab/parallel.hpp"

namespace vexlab {

double AnnulusBump::smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double AnnulusBump::operator()(double r) const {
  // Exact 1 on [2, 4] and exact 0 off (1, 8), whatever rounding does inside.
  if (r <= 1.0 || r >= 8.0) return 0.0;
  if (r >= 2.0 && r <= 4.0) return 1.0;
  return smooth_step(r - 1.0) * (1.0 - smooth_step((r - 4.0) / 4.0));
}

ScaleGrid::ScaleGrid(double t_min, double ratio, int K) : ratio_(ratio) {
  if (!(t_min > 0.0) || !(ratio > 1.0) || K < 0) throw Error("invalid scale grid");
  t_.resize(K + 1);
  for (int k = 0; k <= K; ++k) t_[k] = t_min * std::pow(ratio, k);
}

namespace {

double max_frequency_norm(const Domain& d) {
  return d.dim() == 1 ? d.max_frequency() : std::sqrt(2.0) * d.max_frequency();
}

}  // namespace

ScaleGrid ScaleGrid::standard(const Domain& d) {
  const double rho = std::pow(2.0, 0.25);
  const double t_min = 1.0 / (8.0 * max_frequency_norm(d));
  const double t_last = 8.0 / d.min_frequency();
  const int K = static_cast<int>(std::ceil(std::log(t_last / t_min) / std::log(rho) - 1e-9));
  return ScaleGrid(t_min, rho, K);
}

ScaleGrid ScaleGrid::mollifier(const Domain& d) {
  const double rho = std::sqrt(2.0);
  const double t_min = 2.0 * d.spacing();
  const int K = static_cast<int>(std::floor(std::log(d.half_width() / t_min) / std::log(rho) + 1e-9));
  return ScaleGrid(t_min, rho, std::max(K, 0));
}

GridFunction phi_tD(const GridFunction& f, double t, const AnnulusBump& bump) {
  if (!(t > 0.0)) throw Error("scale must be positive");
  return apply_symbol(f, [&](const Point& xi) { return cplx(bump(t * std::hypot(xi[0], xi[1]))); });
}

std::vector<double> cone_average(const Domain& d, std::span<const double> u, double t) {
  const detail::RowPattern pat = detail::disc_pattern(d, t);
  const double norm = d.cell_volume() / (d.dim() == 1 ? t : t * t);
  std::vector<double> out(d.size());
  if (d.dim() == 1) {
    const int n = d.points_per_axis();
    const int k = pat.half[0];
    if (2 * k + 1 >= n) {
      double s = 0.0;
      for (double v : u) s += v;
      std::fill(out.begin(), out.end(), s * norm);
      return out;
    }
    std::vector<double> prefix(3 * n + 1, 0.0);
    for (int i = 0; i < 3 * n; ++i) prefix[i + 1] = prefix[i] + u[i % n];
    for (int x = 0; x < n; ++x) out[x] = (prefix[n + x + k + 1] - prefix[n + x - k]) * norm;
    return out;
  }
  out = circular_convolve(d, u, detail::pattern_kernel(d, pat));
  for (double& v : out) v *= norm;
  return out;
}

std::vector<double> disc_max_filter(const Domain& d, std::span<const double> u, double t) {
  std::vector<double> out(u.begin(), u.end());
  detail::pattern_max_into(d, u, detail::disc_pattern(d, t), out);
  return out;
}

namespace {

// sqrt(sum_k log(rho) * Agg_k(u_k^2)) where u_k^2 comes from `squared(k)`
// (nullopt = identically zero at that scale).
GridFunction aggregate(const Domain& d, const ScaleGrid& scales, const SquareSpec& spec,
                       const std::function<std::optional<std::vector<double>>(std::size_t)>& squared) {
  if (spec.kind == SquareKind::GLambdaStar && !(spec.lambda > 0.0)) throw Error("lambda must be positive");
  const std::size_t K = scales.size();
  std::vector<std::optional<std::vector<double>>> parts(K);
  parallel_for(K, [&](std::size_t k) {
    auto u2 = squared(k);
    if (!u2) return;
    const double t = scales.t()[k];
    switch (spec.kind) {
      case SquareKind::G:
        break;
      case SquareKind::S:
        *u2 = cone_average(d, *u2, t);
        break;
      case SquareKind::GLambdaStar: {
        const double n = d.dim();
        const double norm = d.cell_volume() / std::pow(t, n);
        const auto kernel = radial_kernel(d, [&](double r) { return std::pow(t / (t + r), spec.lambda * n) * norm; });
        *u2 = circular_convolve(d, *u2, kernel);
        break;
      }
    }
    parts[k] = std::move(u2);
  });
  std::vector<double> acc(d.size(), 0.0);
  const double w = scales.weight();
  for (const auto& p : parts)
    if (p)
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * (*p)[i];
  for (double& v : acc) v = std::sqrt(std::max(v, 0.0));
  return GridFunction(d, std::span<const double>(acc));
}

// |phi(t_k D) f|^2 per scale, from one forward transform.
GridFunction annulus_square(const GridFunction& f, const ScaleGrid& scales, const AnnulusBump& bump,
                            const SquareSpec& spec) {
  const Domain& d = f.domain();
  std::vector<cplx> spectrum(f.values().begin(), f.values().end());
  fft_forward(d, spectrum);
  std::vector<double> norms(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) norms[i] = frequency_norm(d, i);
  return aggregate(d, scales, spec, [&](std::size_t k) -> std::optional<std::vector<double>> {
    const double t = scales.t()[k];
    std::vector<cplx> data(d.size());
    bool any = false;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const double m = bump(t * norms[i]);
      if (m != 0.0 && spectrum[i] != cplx{}) any = true;
      data[i] = m * spectrum[i];
    }
    if (!any) return std::nullopt;
    fft_inverse(d, data);
    std::vector<double> u2(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) u2[i] = std::norm(data[i]);
    return u2;
  });
}

// f * kernel for complex f and a real offset-indexed kernel.
std::vector<cplx> convolve(const GridFunction& f, std::span<const double> kernel) {
  const Domain& d = f.domain();
  std::vector<cplx> a(f.values().begin(), f.values().end());
  std::vector<cplx> k(kernel.begin(), kernel.end());
  fft_forward(d, a);
  fft_forward(d, k);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= k[i];
  fft_inverse(d, a);
  return a;
}

std::vector<double> abs_conv(const GridFunction& f, const Mollifier& phi, double t, int moment_degree) {
  const auto c = convolve(f, sample_dilated(f.domain(), phi, t, moment_degree));
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = std::abs(c[i]);
  return out;
}

std::vector<double> maximal_over_scales(const GridFunction& f, const Mollifier& phi, const ScaleGrid& scales,
                                        bool nontangential) {
  const Domain& d = f.domain();
  const std::size_t K = scales.size();
  std::vector<std::vector<double>> per(K);
  parallel_for(K, [&](std::size_t k) {
    auto a = abs_conv(f, phi, scales.t()[k], -1);
    per[k] = nontangential ? disc_max_filter(d, a, scales.t()[k]) : std::move(a);
  });
  std::vector<double> out(d.size(), 0.0);
  for (const auto& p : per)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], p[i]);
  return out;
}

}  // namespace

GridFunction lusin_area(const GridFunction& f, const ScaleGrid& scales, const AnnulusBump& bump) {
  return annulus_square(f, scales, bump, {SquareKind::S, 0.0});
}

GridFunction g_function(const GridFunction& f, const ScaleGrid& scales, const AnnulusBump& bump) {
  return annulus_square(f, scales, bump, {SquareKind::G, 0.0});
}

GridFunction g_lambda_star(const GridFunction& f, double lambda, const ScaleGrid& scales,
                           const AnnulusBump& bump) {
  return annulus_square(f, scales, bump, {SquareKind::GLambdaStar, lambda});
}

GridFunction nontangential_maximal(const GridFunction& f, const Mollifier& phi, const ScaleGrid& scales) {
  const auto m = maximal_over_scales(f, phi, scales, true);
  return GridFunction(f.domain(), std::span<const double>(m));
}

GridFunction radial_maximal(const GridFunction& f, const Mollifier& phi, const ScaleGrid& scales) {
  const auto m = maximal_over_scales(f, phi, scales, false);
  return GridFunction(f.domain(), std::span<const double>(m));
}

GridFunction grand_maximal(const GridFunction& f, const MollifierDictionary& dict, const ScaleGrid& scales) {
  if (dict.kind != MollifierClass::SchwartzN) throw Error("grand maximal needs a Schwartz dictionary");
  if (dict.entries.empty()) throw Error("empty mollifier dictionary");
  std::vector<double> out(f.size(), 0.0);
  for (const Mollifier& m : dict.entries) {
    const auto v = maximal_over_scales(f, m, scales, true);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(out[i], v[i]);
  }
  return GridFunction(f.domain(), std::span<const double>(out));
}

GridFunction mollifier_square(const GridFunction& f, const Mollifier& phi, int moment_degree,
                              const SquareSpec& spec, const ScaleGrid& scales) {
  return aggregate(f.domain(), scales, spec, [&](std::size_t k) -> std::optional<std::vector<double>> {
    auto a = abs_conv(f, phi, scales.t()[k], moment_degree);
    for (double& v : a) v *= v;
    return a;
  });
}

GridFunction intrinsic_square(const GridFunction& f, const MollifierDictionary& dict, const SquareSpec& spec,
                              const ScaleGrid& scales) {
  if (dict.kind != MollifierClass::HolderCompact) throw Error("intrinsic square needs a compact Hölder dictionary");
  if (dict.entries.empty()) throw Error("empty mollifier dictionary");
  for (const Mollifier& m : dict.entries)
    if (!validate_mollifier(m, dict).ok) throw Error("not a 𝒞_{α,d} member");
  return aggregate(f.domain(), scales, spec, [&](std::size_t k) -> std::optional<std::vector<double>> {
    std::vector<double> A(f.size(), 0.0);
    for (const Mollifier& m : dict.entries) {
      const auto a = abs_conv(f, m, scales.t()[k], dict.d);
      for (std::size_t i = 0; i < A.size(); ++i) A[i] = std::max(A[i], a[i]);
    }
    for (double& v : A) v *= v;
    return A;
  });
}

double hardy_norm(const GridFunction& f, const SpaceSpec& s, const ScaleGrid& scales, const AnnulusBump& bump) {
  return weighted_norm(lusin_area(f, scales, bump), s);
}

CharacterizationReport characterization_probe(const Dictionary& D, const SpaceSpec& s,
                                              const CharacterizationConfig& cfg) {
  const Domain& d = s.p.domain();
  CharacterizationReport rep;
  const double n = d.dim();
  if (!(cfg.lambda > 2.0 * cfg.s))
    rep.warnings.push_back("lambda <= 2 s: outside the g_lambda* comparison range");
  if (cfg.include_intrinsic && !(cfg.s > 1.0 && cfg.s < (n + cfg.alpha + cfg.d) / n))
    rep.warnings.push_back("s outside (1, (n + alpha + d) / n): intrinsic comparison hypothesis not met");

  const ScaleGrid annuli = ScaleGrid::standard(d);
  const ScaleGrid dil = ScaleGrid::mollifier(d);
  // Gaussians sampled at t = h/2 still sum to their integral, and the compact
  // kernels just vanish where their disc holds too few samples. Starting at
  // 2h instead damps everything above a quarter of the Nyquist frequency.
  const ScaleGrid fine(d.spacing() / 2, std::sqrt(2.0), static_cast<int>(dil.size()) + 1);
  const MollifierDictionary schwartz = schwartz_dictionary(d.dim(), cfg.schwartz_order);
  std::optional<MollifierDictionary> holder;
  if (cfg.include_intrinsic) holder = holder_dictionary(d.dim(), cfg.alpha, cfg.d);

  std::vector<std::string> names{"S", "g", "g_lambda*", "nontangential", "radial", "grand"};
  if (holder) {
    names.push_back("intrinsic_g");
    names.push_back("intrinsic_S");
    names.push_back("intrinsic_g_lambda*");
  }
  for (const auto& nm : names) rep.norms[nm].assign(D.size(), 0.0);

  for (std::size_t i = 0; i < D.size(); ++i) {
    const GridFunction& f = D[i];
    auto put = [&](const std::string& nm, const GridFunction& field) { rep.norms[nm][i] = weighted_norm(field, s); };
    put("S", lusin_area(f, annuli));
    put("g", g_function(f, annuli));
    put("g_lambda*", g_lambda_star(f, cfg.lambda, annuli));
    put("nontangential", nontangential_maximal(f, schwartz.entries[1], fine));
    put("radial", radial_maximal(f, schwartz.entries[1], fine));
    put("grand", grand_maximal(f, schwartz, fine));
    if (holder) {
      put("intrinsic_g", intrinsic_square(f, *holder, {SquareKind::G, 0.0}, fine));
      put("intrinsic_S", intrinsic_square(f, *holder, {SquareKind::S, 0.0}, fine));
      put("intrinsic_g_lambda*", intrinsic_square(f, *holder, {SquareKind::GLambdaStar, cfg.lambda}, fine));
    }
  }

  const auto& base = rep.norms["S"];
  std::map<std::string, std::pair<double, double>> running;
  std::size_t p = 0;
  for (std::size_t i = 0; i < D.size(); ++i) {
    if (base[i] > 0.0) {
      for (const auto& nm : names) {
        const double r = rep.norms[nm][i] / base[i];
        auto [it, fresh] = running.try_emplace(nm, r, r);
        if (!fresh) {
          it->second.first = std::min(it->second.first, r);
          it->second.second = std::max(it->second.second, r);
        }
      }
    } else {
      rep.warnings.push_back("entry " + std::to_string(i) + " has zero Hardy norm; skipped");
    }
    while (p < D.prefix_sizes().size() && D.prefix_sizes()[p] == i + 1) {
      double widest = 1.0;
      for (const auto& [nm, band] : running)
        widest = std::max(widest, band.first > 0.0 ? band.second / band.first
                                                   : std::numeric_limits<double>::infinity());
      rep.band_trend.emplace_back(i + 1, widest);
      ++p;
    }
  }
  rep.ratio_band = running;
  std::vector<double> widths;
  for (const auto& [sz, w] : rep.band_trend) widths.push_back(w);
  rep.band_verdict = classify_trend(widths);
  return rep;
}

}  // namespace vexlab
