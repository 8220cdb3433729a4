#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "besovlab/format.hpp"
#include "besovlab/quadrature.hpp"

namespace besovlab {

namespace {

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, std::size_t line_no)
{
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || trim(field.substr(used)).size() != 0)
    throw std::invalid_argument("line " + std::to_string(line_no) + ": not a number: '" + field + "'");
  return v;
}

}  // namespace

SampledPath read_path_csv(std::istream& in)
{
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<double> t;
  std::vector<double> v;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#')
      continue;
    if (!have_header) {
      if (line != "t,value")
        throw std::invalid_argument("path CSV must start with header 't,value'");
      have_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": expected two columns");
    t.push_back(parse_number(line.substr(0, comma), line_no));
    v.push_back(parse_number(line.substr(comma + 1), line_no));
    if (!std::isfinite(v.back()))
      throw std::invalid_argument("line " + std::to_string(line_no) + ": value is not finite");
  }
  if (!have_header)
    throw std::invalid_argument("path CSV is empty");
  if (t.size() < 2)
    throw std::invalid_argument("path CSV needs at least 2 rows");

  const UnitGrid grid(t.size());
  constexpr double tol = 1e-9;
  if (std::abs(t.front()) > tol || std::abs(t.back() - 1.0) > tol)
    throw std::invalid_argument("path grid must span [0, 1]");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - grid.step()) > tol)
      throw std::invalid_argument("path grid is not uniform near row " + std::to_string(i));
  }
  return SampledPath(grid, std::move(v));
}

void write_path_csv(std::ostream& out, const SampledPath& path)
{
  out << "t,value\n";
  const auto nodes = path.grid().nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out << fmt17(nodes[i]) << ',' << fmt17(path[i]) << '\n';
}

}  // namespace besovlab
