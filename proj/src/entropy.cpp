#include "besovlab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "besovlab/errors.hpp"
#include "besovlab/mixed_norms.hpp"

namespace besovlab {

FiniteMetricSpace::FiniteMetricSpace(std::vector<double> labels, std::vector<double> dist, double tol)
    : labels_(std::move(labels)), dist_(std::move(dist))
{
  const std::size_t n = labels_.size();
  if (n == 0)
    throw std::invalid_argument("metric space needs at least one point");
  if (dist_.size() != n * n)
    throw std::invalid_argument("distance matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(dist_[i * n + i]) > tol)
      throw std::invalid_argument("distance matrix must have a zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = dist_[i * n + j];
      if (!std::isfinite(d) || d < -tol)
        throw std::invalid_argument("distances must be finite and nonnegative");
      if (std::abs(d - dist_[j * n + i]) > tol)
        throw std::invalid_argument("distance matrix is not symmetric");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (dist_[i * n + k] > dist_[i * n + j] + dist_[j * n + k] + tol)
          throw std::invalid_argument("triangle inequality fails at (" + std::to_string(i) + ", " +
                                      std::to_string(j) + ", " + std::to_string(k) + ")");

  min_positive_ = std::numeric_limits<double>::infinity();
  for (double d : dist_) {
    diameter_ = std::max(diameter_, d);
    if (d > 0.0)
      min_positive_ = std::min(min_positive_, d);
  }
  if (std::isinf(min_positive_))
    min_positive_ = 0.0;

  // farthest-point traversal
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i)
    nearest[i] = dist_[i];  // distance to center 0
  while (true) {
    std::size_t far = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (nearest[i] > nearest[far])
        far = i;
    radii_.push_back(nearest[far]);
    if (nearest[far] <= 0.0)
      break;
    for (std::size_t i = 0; i < n; ++i)
      nearest[i] = std::min(nearest[i], dist_[far * n + i]);
  }
  distinct_ = radii_.size();
}

FiniteMetricSpace line_space(std::vector<double> points)
{
  const std::size_t n = points.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d[i * n + j] = std::abs(points[i] - points[j]);
  return FiniteMetricSpace(std::move(points), std::move(d));
}

std::size_t covering_number(const FiniteMetricSpace& space, double epsilon)
{
  if (!(epsilon > 0.0))
    throw std::invalid_argument("covering radius must be positive");
  const auto& r = space.greedy_radii();
  const auto it = std::find_if(r.begin(), r.end(), [&](double x) { return x <= epsilon; });
  return static_cast<std::size_t>(it - r.begin()) + 1;
}

namespace {

// Branch on the centers that can cover the first uncovered point; every
// cover contains one of them, so the search stays exact.
bool search(const FiniteMetricSpace& space, std::vector<std::size_t>& chosen, std::size_t k, double eps,
            std::size_t& budget)
{
  if (budget == 0)
    throw BudgetExceeded("exhaustive covering search exceeded its subset budget");
  --budget;
  std::size_t first = space.size();
  for (std::size_t i = 0; i < space.size() && first == space.size(); ++i) {
    bool hit = false;
    for (std::size_t c : chosen)
      hit = hit || space(i, c) <= eps;
    if (!hit)
      first = i;
  }
  if (first == space.size())
    return true;
  if (chosen.size() == k)
    return false;
  std::vector<std::size_t> cand;
  for (std::size_t c = 0; c < space.size(); ++c)
    if (space(first, c) <= eps)
      cand.push_back(c);
  std::stable_sort(cand.begin(), cand.end(),
                   [&](std::size_t a, std::size_t b) { return space(first, a) > space(first, b); });
  for (std::size_t c : cand) {
    chosen.push_back(c);
    if (search(space, chosen, k, eps, budget))
      return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::size_t minimal_covering_number(const FiniteMetricSpace& space, double epsilon, std::size_t max_subsets)
{
  if (!(epsilon > 0.0))
    throw std::invalid_argument("covering radius must be positive");
  const std::size_t upper = covering_number(space, epsilon);
  std::size_t budget = max_subsets;
  for (std::size_t k = 1; k < upper; ++k) {
    std::vector<std::size_t> chosen;
    if (search(space, chosen, k, epsilon, budget))
      return k;
  }
  return upper;
}

double entropy_integral(const FiniteMetricSpace& space, Exponent m, std::size_t eps_nodes)
{
  if (eps_nodes < 2)
    throw std::invalid_argument("entropy integral needs at least 2 eps nodes");
  const double D = space.diameter();
  if (D <= 0.0)
    return 0.0;
  if (m.is_infinite())
    return 9.0 * D;
  const double inv_m = 1.0 / m.value();
  const double eps0 = 0.5 * space.min_positive_distance();
  double total = eps0 * std::pow(static_cast<double>(space.distinct_points()), inv_m);
  const double h = (D - eps0) / static_cast<double>(eps_nodes - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < eps_nodes; ++i) {
    const double eps = i + 1 == eps_nodes ? D : eps0 + h * static_cast<double>(i);
    const double w = (i == 0 || i + 1 == eps_nodes) ? 0.5 : 1.0;
    sum += w * std::pow(static_cast<double>(covering_number(space, eps)), inv_m);
  }
  total += h * sum;
  return 9.0 * total;
}

double entropy_integral_exact(const FiniteMetricSpace& space, Exponent m)
{
  const double D = space.diameter();
  if (D <= 0.0)
    return 0.0;
  if (m.is_infinite())
    return 9.0 * D;
  // N(eps) = k on [r_k, r_{k-1}), with r_0 = D
  const auto& r = space.greedy_radii();
  double total = 0.0;
  double upper = D;
  for (std::size_t k = 1; k <= r.size(); ++k) {
    const double lower = r[k - 1];
    if (upper > lower)
      total += (upper - lower) * std::pow(static_cast<double>(k), 1.0 / m.value());
    upper = std::min(upper, lower);
  }
  return 9.0 * total;
}

double beta_of_m(double V, std::span<const double> curve, Exponent s, const WeightedMeasure& nu)
{
  if (!(V >= 0.0))
    throw std::invalid_argument("entropy integral V must be nonnegative");
  if (curve.size() != nu.size())
    throw std::invalid_argument("curve has " + std::to_string(curve.size()) + " values for " +
                                std::to_string(nu.size()) + " measure nodes");
  if (V == 0.0)
    return 0.0;
  return V * weighted_lp(curve, nu.weights(), s);
}

}  // namespace besovlab
