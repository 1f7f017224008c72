#include "vexlab_cli/gridio.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace vexlab::cli {

std::string format_number(double v) { return nlohmann::json(v).dump(); }

void write_grid_csv(std::ostream& out, const GridFunction& f, bool force_imag) {
  const Domain& d = f.domain();
  const bool imag = force_imag || !f.is_real();
  out << "index,x" << (d.dim() == 2 ? ",y" : "") << ",re" << (imag ? ",im" : "") << "\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = d.point(i);
    out << i << "," << format_number(x[0]);
    if (d.dim() == 2) out << "," << format_number(x[1]);
    out << "," << format_number(f[i].real());
    if (imag) out << "," << format_number(f[i].imag());
    out << "\n";
  }
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (...) {
    throw Error(where + ": not a number: '" + s + "'");
  }
  if (used != s.size()) throw Error(where + ": not a number: '" + s + "'");
  return v;
}

}  // namespace

GridFunction read_grid_csv(std::istream& in, const Domain& d, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw Error(name + ": empty CSV");
  const auto header = split(line);
  const std::vector<std::string> want_real = d.dim() == 1 ? std::vector<std::string>{"index", "x", "re"}
                                                          : std::vector<std::string>{"index", "x", "y", "re"};
  auto with_im = want_real;
  with_im.push_back("im");
  if (header != want_real && header != with_im)
    throw Error(name + ":1: header must be " + std::string(d.dim() == 1 ? "index,x,re[,im]" : "index,x,y,re[,im]"));
  const std::size_t cols = header.size();
  GridFunction f(d);
  std::vector<char> seen(d.size(), 0);
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const std::string where = name + ":" + std::to_string(row);
    const auto cells = split(line);
    if (cells.size() != cols) throw Error(where + ": expected " + std::to_string(cols) + " columns");
    const double idx = parse_double(cells[0], where);
    if (idx < 0 || idx != std::floor(idx) || idx >= double(d.size())) throw Error(where + ": index out of range");
    const auto i = static_cast<std::size_t>(idx);
    if (seen[i]) throw Error(where + ": duplicate index");
    seen[i] = 1;
    const Point p = d.point(i);
    const double tol = 1e-9 * (1.0 + d.half_width());
    if (std::abs(parse_double(cells[1], where) - p[0]) > tol ||
        (d.dim() == 2 && std::abs(parse_double(cells[2], where) - p[1]) > tol))
      throw Error(where + ": coordinates do not match the domain");
    const std::size_t re = d.dim() == 1 ? 2 : 3;
    f[i] = cplx(parse_double(cells[re], where), cols > re + 1 ? parse_double(cells[re + 1], where) : 0.0);
  }
  for (char s : seen)
    if (!s) throw Error(name + ": field does not cover the domain");
  return f;
}

GridFunction read_grid_csv_file(const std::string& path, const Domain& d) {
  std::ifstream in(path);
  if (!in) throw Error(path + ": cannot read field");
  return read_grid_csv(in, d, path);
}

}  // namespace vexlab::cli
