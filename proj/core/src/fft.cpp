#include "vexlab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace vexlab {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (dim, N, sign) and kept for the
// lifetime of the process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int dim, int n, int sign) {
    std::lock_guard lock(mu_);
    auto key = std::make_tuple(dim, n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    const std::size_t total = dim == 1 ? std::size_t(n) : std::size_t(n) * n;
    auto* buf = fftw_alloc_complex(total);
    fftw_plan p = dim == 1
                      ? fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
                      : fftw_plan_dft_2d(n, n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void execute(const Domain& d, std::span<cplx> data, int sign) {
  if (data.size() != d.size()) throw Error("domain mismatch");
  fftw_plan p = PlanCache::instance().get(d.dim(), d.points_per_axis(), sign);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
}

}  // namespace

void fft_forward(const Domain& d, std::span<cplx> data) { execute(d, data, FFTW_FORWARD); }

void fft_inverse(const Domain& d, std::span<cplx> data) {
  execute(d, data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(d.size());
  for (cplx& v : data) v *= scale;
}

Point frequency(const Domain& d, std::size_t idx) {
  const int n = d.points_per_axis();
  auto m = [n](int k) { return k < n / 2 ? k : k - n; };
  const double unit = std::numbers::pi / d.half_width();
  if (d.dim() == 1) return {unit * m(static_cast<int>(idx)), 0.0};
  return {unit * m(static_cast<int>(idx % n)), unit * m(static_cast<int>(idx / n))};
}

double frequency_norm(const Domain& d, std::size_t idx) {
  const Point xi = frequency(d, idx);
  return std::hypot(xi[0], xi[1]);
}

GridFunction apply_multipliers(const GridFunction& f, std::span<const cplx> multipliers) {
  const Domain& d = f.domain();
  if (multipliers.size() != d.size()) throw Error("domain mismatch");
  std::vector<cplx> data(f.values().begin(), f.values().end());
  fft_forward(d, data);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] *= multipliers[i];
  fft_inverse(d, data);
  return GridFunction(d, std::move(data));
}

GridFunction apply_symbol(const GridFunction& f, const std::function<cplx(const Point&)>& symbol) {
  const Domain& d = f.domain();
  std::vector<cplx> m(d.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = symbol(frequency(d, i));
  return apply_multipliers(f, m);
}

std::vector<double> circular_convolve(const Domain& d, std::span<const double> a,
                                      std::span<const double> kernel) {
  if (a.size() != d.size() || kernel.size() != d.size()) throw Error("domain mismatch");
  std::vector<cplx> fa(a.begin(), a.end());
  std::vector<cplx> fk(kernel.begin(), kernel.end());
  fft_forward(d, fa);
  fft_forward(d, fk);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fk[i];
  fft_inverse(d, fa);
  std::vector<double> out(fa.size());
  for (std::size_t i = 0; i < fa.size(); ++i) out[i] = fa[i].real();
  return out;
}

std::vector<double> radial_kernel(const Domain& d, const std::function<double(double)>& f) {
  const int n = d.points_per_axis();
  std::vector<double> k(d.size());
  if (d.dim() == 1) {
    for (int o = 0; o < n; ++o) k[o] = f(offset_norm(d, o, 0));
  } else {
    for (int oy = 0; oy < n; ++oy)
      for (int ox = 0; ox < n; ++ox) k[std::size_t(oy) * n + ox] = f(offset_norm(d, ox, oy));
  }
  return k;
}

}  // namespace vexlab
