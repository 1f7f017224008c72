#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vexlab/grid.hpp"

namespace vexlab {

// Discrete Fourier transform on the periodic box, backed by FFTW.
// forward is unnormalized; inverse divides by the point count.
void fft_forward(const Domain& d, std::span<cplx> data);
void fft_inverse(const Domain& d, std::span<cplx> data);

// Angular frequency vector of DFT bin idx: xi = pi m / L per axis, with
// m in [-N/2, N/2).
Point frequency(const Domain& d, std::size_t idx);
double frequency_norm(const Domain& d, std::size_t idx);

// Multiply the spectrum by symbol(xi) and transform back.
GridFunction apply_symbol(const GridFunction& f, const std::function<cplx(const Point&)>& symbol);
// Same with precomputed per-bin multipliers.
GridFunction apply_multipliers(const GridFunction& f, std::span<const cplx> multipliers);

// Circular convolution (a * k)[x] = sum_o a[x - o] k[o] where k is indexed by
// lattice offset (offset o stored at the flat index of o mod N).
std::vector<double> circular_convolve(const Domain& d, std::span<const double> a,
                                      std::span<const double> kernel);

// Kernel array indexed by lattice offset, k[o] = f(minimum-image offset norm).
std::vector<double> radial_kernel(const Domain& d, const std::function<double(double)>& f);

}  // namespace vexlab
