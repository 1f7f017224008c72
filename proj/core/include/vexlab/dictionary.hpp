#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vexlab/grid.hpp"

namespace vexlab {

/**
 * Finite, seeded list of test functions standing in for "all f" in
 * operator-norm suprema. Entries are grouped into levels; the cumulative
 * level sizes define the nested prefixes along which trends are recorded.
 */
class Dictionary {
 public:
  Dictionary(std::vector<GridFunction> entries, std::vector<std::size_t> prefix_sizes,
             std::uint64_t seed, std::string description);

  const std::vector<GridFunction>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const GridFunction& operator[](std::size_t i) const { return entries_[i]; }
  // Strictly increasing, last element == size().
  const std::vector<std::size_t>& prefix_sizes() const { return prefix_sizes_; }
  std::uint64_t seed() const { return seed_; }
  const std::string& description() const { return description_; }

 private:
  std::vector<GridFunction> entries_;
  std::vector<std::size_t> prefix_sizes_;
  std::uint64_t seed_;
  std::string description_;
};

struct DictionarySpec {
  std::uint64_t seed = 1;
  int max_levels = 8;
  int random_per_scale = 1;
};

// Scales r_mid 2^(+-j) filling [h, L], added middle-out: level j holds the
// two scales at distance j octaves from the geometric middle. Each scale
// contributes ball indicators (random center, at the origin, and the
// translate centred at 2r next to the origin), Gaussians (random center,
// origin) and a random-sign, random-amplitude field on a random ball.
Dictionary standard_dictionary(const Domain& d, const DictionarySpec& spec = {});

// Mean-zero wave packets whose spectra are confined to the octave band
// [xi_j / 2, 2 xi_j]; level j uses xi_j = 4 (pi / L) 2^j, up to the Nyquist
// band. Real valued.
Dictionary band_limited_dictionary(const Domain& d, std::uint64_t seed, int per_level = 4,
                                   int max_levels = 8);

// Real field with independent Gaussian Fourier coefficients on lo <= |xi| <= hi.
GridFunction band_limited_field(const Domain& d, double lo, double hi, std::uint64_t seed);

}  // namespace vexlab
