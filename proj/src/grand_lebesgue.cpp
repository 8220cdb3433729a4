#include "besovlab/grand_lebesgue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "besovlab/detail/powers.hpp"

namespace besovlab {

PsiFunction::PsiFunction(Kind kind, double l, double upper, std::vector<MomentPoint> table)
    : kind_(kind), l_(l), upper_(upper), table_(std::move(table))
{
}

PsiFunction PsiFunction::power(double l, double upper)
{
  if (!(l > 0.0) || !std::isfinite(l))
    throw std::invalid_argument("power psi needs a finite l > 0");
  if (!(upper > 1.0))
    throw std::invalid_argument("psi support (1, B) needs B > 1");
  return PsiFunction(Kind::power_l, l, upper, {});
}

PsiFunction PsiFunction::tabulated(std::vector<MomentPoint> table, double upper)
{
  if (table.empty())
    throw std::invalid_argument("psi table is empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!(table[i].value > 0.0) || !std::isfinite(table[i].value))
      throw std::invalid_argument("psi must be positive and finite on its table");
    if (!(table[i].m >= 1.0) || table[i].m > upper)
      throw std::invalid_argument("psi table node outside the support");
    if (i > 0 && !(table[i].m > table[i - 1].m))
      throw std::invalid_argument("psi table m-values must be strictly increasing");
  }
  return PsiFunction(Kind::tabulated, 0.0, upper, std::move(table));
}

PsiFunction PsiFunction::degenerate(double r) { return tabulated({{r, 1.0}}); }

bool PsiFunction::in_support(double m) const
{
  if (!(m >= 1.0))
    return false;
  return kind_ == Kind::tabulated ? m <= upper_ : m < upper_;
}

double PsiFunction::operator()(double m) const
{
  if (kind_ == Kind::power_l)
    return std::pow(m, 1.0 / l_);
  for (const auto& row : table_) {
    if (std::abs(row.m - m) <= 1e-12 * std::max(1.0, m))
      return row.value;
  }
  return std::numeric_limits<double>::infinity();
}

PsiFunction parse_psi(const std::string& spec)
{
  if (spec == "sqrt")
    return PsiFunction::power(2.0);
  if (spec.rfind("power:", 0) == 0) {
    std::size_t used = 0;
    const std::string rest = spec.substr(6);
    double l = 0.0;
    try {
      l = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size())
      throw std::invalid_argument("bad psi spec '" + spec + "'");
    return PsiFunction::power(l);
  }
  throw std::invalid_argument("unknown psi spec '" + spec + "'");
}

std::vector<double> default_moment_grid() { return {1, 1.5, 2, 3, 4, 6, 8, 12, 16, 24, 32}; }

std::vector<double> log_spaced(double lo, double hi, std::size_t n)
{
  if (!(lo > 0.0 && lo < hi) || n < 2)
    throw std::invalid_argument("log_spaced needs 0 < lo < hi and n >= 2");
  std::vector<double> x(n);
  const double r = std::log(hi / lo);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = lo * std::exp(r * static_cast<double>(i) / static_cast<double>(n - 1));
  x.front() = lo;
  x.back() = hi;
  return x;
}

MomentCurve empirical_moment_curve(std::span<const double> samples, std::span<const double> ms)
{
  if (samples.empty())
    throw std::invalid_argument("moment curve needs samples");
  MomentCurve curve;
  for (double m : ms) {
    const detail::AbsPower pw(m);
    double sum = 0.0;
    for (double x : samples)
      sum += pw(x);
    curve.push_back({m, pw.root(sum / static_cast<double>(samples.size()))});
  }
  return curve;
}

double gls_norm(const MomentCurve& curve, const PsiFunction& psi)
{
  if (curve.empty())
    throw std::invalid_argument("moment curve is empty");
  double best = 0.0;
  for (const auto& pt : curve) {
    if (!psi.in_support(pt.m))
      throw std::invalid_argument("moment order " + std::to_string(pt.m) + " outside the psi support");
    const double v = psi(pt.m);
    if (std::isinf(v))
      continue;  // C / inf = 0
    best = std::max(best, std::abs(pt.value) / v);
  }
  return best;
}

Curve tilde_psi(const PsiFunction& psi, std::span<const double> grid)
{
  Curve c;
  for (double m : grid) {
    const double v = psi(m);
    if (std::isinf(v))
      continue;
    c.p.push_back(m);
    c.g.push_back(m * std::log(v));
  }
  return c;
}

Curve tilde_psi(const PsiFunction& psi)
{
  if (psi.kind() != PsiFunction::Kind::tabulated)
    throw std::invalid_argument("tilde_psi without a grid needs a tabulated psi");
  std::vector<double> grid;
  for (const auto& row : psi.table())
    grid.push_back(row.m);
  return tilde_psi(psi, grid);
}

double young_fenchel(const Curve& g, double y)
{
  if (g.p.empty() || g.p.size() != g.g.size())
    throw std::invalid_argument("Young-Fenchel transform needs a nonempty curve");
  const double ay = std::abs(y);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.p.size(); ++i)
    best = std::max(best, g.p[i] * ay - g.g[i]);
  return best;
}

std::vector<double> young_fenchel_grid(const PsiFunction& psi, double y)
{
  const double rate = std::max(2.0, psi.l());
  double hi = std::exp(rate * std::abs(y) + 2.0);
  if (std::isfinite(psi.upper()))
    hi = std::min(hi, psi.upper() * (1.0 - 1e-12));
  if (!(hi > 1.0))
    return {1.0};
  return log_spaced(1.0, hi, 2048);
}

double tail_bound(const PsiFunction& psi, double u)
{
  if (!(u > std::exp(1.0)))
    throw std::invalid_argument("tail bound holds only for u > e");
  const double y = std::log(u);
  const Curve g = psi.kind() == PsiFunction::Kind::tabulated ? tilde_psi(psi)
                                                              : tilde_psi(psi, young_fenchel_grid(psi, y));
  return std::exp(-young_fenchel(g, y));
}

PsiFunction fit_psi_from_moments(const MomentCurve& curve)
{
  if (curve.empty())
    throw std::invalid_argument("moment curve is empty");
  for (const auto& pt : curve) {
    if (!(pt.value > 0.0))
      throw std::invalid_argument("cannot fit psi to a non-positive moment at m = " + std::to_string(pt.m));
  }
  return PsiFunction::tabulated(curve);
}

}  // namespace besovlab
