#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace besovlab {

struct MomentPoint
{
  double m;
  double value;  ///< |f|_m
};

using MomentCurve = std::vector<MomentPoint>;

/// A real function sampled on a strictly increasing grid of p-values.
struct Curve
{
  std::vector<double> p;
  std::vector<double> g;
};

/// Generating function psi of a Grand Lebesgue space.
///
/// power_l: psi(m) = m^{1/l} on [1, B).
/// tabulated: psi is given at its table nodes and is +inf elsewhere, so a
/// one-row table is the degenerate psi_(r) whose norm is the plain L_r norm.
class PsiFunction
{
public:
  enum class Kind { power_l, tabulated };

  static PsiFunction power(double l, double upper = std::numeric_limits<double>::infinity());
  static PsiFunction tabulated(std::vector<MomentPoint> table,
                               double upper = std::numeric_limits<double>::infinity());
  static PsiFunction degenerate(double r);

  Kind kind() const { return kind_; }
  double l() const { return l_; }
  double upper() const { return upper_; }
  const std::vector<MomentPoint>& table() const { return table_; }

  /// Support check: 1 <= m, and m < B (m <= B for tables, whose last node may be B).
  bool in_support(double m) const;
  /// psi(m); +inf off the table for tabulated kinds.
  double operator()(double m) const;

private:
  PsiFunction(Kind kind, double l, double upper, std::vector<MomentPoint> table);

  Kind kind_;
  double l_;
  double upper_;
  std::vector<MomentPoint> table_;
};

/// Parses `sqrt`, `power:<l>`; tables are read by the caller.
PsiFunction parse_psi(const std::string& spec);

/// m-grid {1, 1.5, 2, 3, 4, 6, 8, 12, 16, 24, 32}.
std::vector<double> default_moment_grid();

std::vector<double> log_spaced(double lo, double hi, std::size_t n);

/// (mean |x|^m)^{1/m} at each m.
MomentCurve empirical_moment_curve(std::span<const double> samples, std::span<const double> ms);

/// sup over the curve of |f|_m / psi(m).
double gls_norm(const MomentCurve& curve, const PsiFunction& psi);

/// m -> m ln psi(m) on the given grid.
Curve tilde_psi(const PsiFunction& psi, std::span<const double> grid);
/// m -> m ln psi(m) on the table nodes (tabulated psi only).
Curve tilde_psi(const PsiFunction& psi);

/// max over the grid of p|y| - g(p).
double young_fenchel(const Curve& g, double y);

/// Grid used for the transform of power_l at y: 2048 log-spaced points
/// on [1, e^{max(2,l)|y| + 2}].
std::vector<double> young_fenchel_grid(const PsiFunction& psi, double y);

/// exp(-tilde_psi^*(ln u)), u > e.
double tail_bound(const PsiFunction& psi, double u);

/// Tabulated psi equal to the moment curve.
PsiFunction fit_psi_from_moments(const MomentCurve& curve);

}  // namespace besovlab
