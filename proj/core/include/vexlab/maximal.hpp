#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vexlab/dictionary.hpp"
#include "vexlab/grid.hpp"
#include "vexlab/luxemburg.hpp"

namespace vexlab {

// sup of ball averages of |f| over family balls containing each point; the
// degenerate ball contributes |f(x)| everywhere, so the result dominates |f|.
GridFunction hl_maximal(const GridFunction& f, const BallFamily& F);
std::vector<double> hl_maximal(std::span<const double> abs_values, const BallFamily& F);

// {M(|f|^theta)}^(1/theta)
GridFunction powered_maximal(const GridFunction& f, double theta, const BallFamily& F);

// Ratio of the two sides of the vector-valued maximal inequality, both
// measured in L^{r p}_{w^{1/r}}. 0 for an all-zero family.
double fs_vector_probe(const std::vector<GridFunction>& fs, double q, const SpaceSpec& s, double r,
                       const BallFamily& F);

struct OperatorNormEstimate {
  double value = 0.0;
  std::size_t argmax_entry = 0;
  // (prefix size, running max) along the dictionary's nested prefixes
  std::vector<std::pair<std::size_t, double>> trend;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;

  std::vector<double> trend_values() const;
};

using Operator = std::function<GridFunction(const GridFunction&)>;
using NormFunction = std::function<double(const GridFunction&)>;

// max over dictionary entries g of norm(T g) / norm(g). Entries of zero norm
// are skipped and counted.
OperatorNormEstimate operator_norm_estimate(const Operator& T, const SpaceSpec& s, const Dictionary& D);
OperatorNormEstimate operator_norm_estimate(const Operator& T, const NormFunction& norm,
                                            const Dictionary& D);

// Assembles an estimate from per-entry ratios (NaN marks a skipped entry).
OperatorNormEstimate estimate_from_ratios(std::span<const double> ratios,
                                          std::span<const std::size_t> prefix_sizes);

}  // namespace vexlab
