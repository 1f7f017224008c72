#pragma once

#include <iosfwd>
#include <string>

#include "vexlab/grid.hpp"

namespace vexlab::cli {

// Grid CSV: header index,x[,y],re[,im]. The imaginary column is written
// only for complex data (or when asked for).
void write_grid_csv(std::ostream& out, const GridFunction& f, bool force_imag = false);

// Reads a grid CSV onto `d`; rows may come in any order but every index
// must appear once and its coordinates must match the domain.
GridFunction read_grid_csv(std::istream& in, const Domain& d, const std::string& name = "<csv>");
GridFunction read_grid_csv_file(const std::string& path, const Domain& d);

// Shortest round-trip decimal form, the same text the JSON writer uses.
std::string format_number(double v);

}  // namespace vexlab::cli
