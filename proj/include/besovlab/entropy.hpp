#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "besovlab/quadrature.hpp"

namespace besovlab {

/// Finite (semi-)metric space: labelled points with a full distance matrix.
class FiniteMetricSpace
{
public:
  /// dist is row-major n x n. Checks symmetry, zero diagonal, nonnegativity
  /// and the triangle inequality up to tol.
  FiniteMetricSpace(std::vector<double> labels, std::vector<double> dist, double tol = 1e-9);

  std::size_t size() const { return labels_.size(); }
  const std::vector<double>& labels() const { return labels_; }
  double operator()(std::size_t i, std::size_t j) const { return dist_[i * labels_.size() + j]; }
  double diameter() const { return diameter_; }
  /// Smallest strictly positive distance; 0 when every distance is 0.
  double min_positive_distance() const { return min_positive_; }
  /// Number of points up to zero distance.
  std::size_t distinct_points() const { return distinct_; }

  /// Greedy farthest-point radii: radii()[k-1] is the covering radius of the
  /// first k centers (start at point 0). Nonincreasing, last entry 0.
  const std::vector<double>& greedy_radii() const { return radii_; }

private:
  std::vector<double> labels_;
  std::vector<double> dist_;
  double diameter_ = 0.0;
  double min_positive_ = 0.0;
  std::size_t distinct_ = 0;
  std::vector<double> radii_;
};

/// Points on the real line with |x - y|.
FiniteMetricSpace line_space(std::vector<double> points);

/// Size of the greedy farthest-point covering by closed eps-balls.
std::size_t covering_number(const FiniteMetricSpace& space, double epsilon);

/// Exhaustive minimal covering, for small spaces (tests and diagnostics).
/// Throws BudgetExceeded when the branch search visits more than max_subsets nodes.
std::size_t minimal_covering_number(const FiniteMetricSpace& space, double epsilon,
                                    std::size_t max_subsets = 50'000'000);

/// 9 * int_0^D N(eps)^{1/m} d eps. Below half the smallest positive distance
/// N is constant and integrated exactly; above it a uniform trapezoid with
/// eps_nodes points is used.
double entropy_integral(const FiniteMetricSpace& space, Exponent m, std::size_t eps_nodes = 257);

/// Same integral summed exactly over the steps of the greedy N.
double entropy_integral_exact(const FiniteMetricSpace& space, Exponent m);

/// V * |curve|_{s, nu}; the curve is sampled on nu's nodes.
double beta_of_m(double V, std::span<const double> curve, Exponent s, const WeightedMeasure& nu);

}  // namespace besovlab
