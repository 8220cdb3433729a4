#include "besovlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace besovlab {

Exponent::Exponent(double value) : value_(value)
{
  if (std::isnan(value) || value < 1.0)
    throw std::invalid_argument("exponent must be >= 1 or infinity, got " + std::to_string(value));
}

UnitGrid::UnitGrid(std::size_t n) : n_(n)
{
  if (n < 2)
    throw std::invalid_argument("a unit grid needs at least 2 nodes");
}

std::vector<double> UnitGrid::nodes() const
{
  std::vector<double> t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    t[i] = node(i);
  t.back() = 1.0;
  return t;
}

UnitGrid make_uniform_grid(std::size_t n) { return UnitGrid(n); }

SampledPath::SampledPath(UnitGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values))
{
  if (values_.size() != grid_.size())
    throw std::invalid_argument("path has " + std::to_string(values_.size()) +
                                " values for a grid of " + std::to_string(grid_.size()));
}

double SampledPath::operator()(double t) const
{
  constexpr double eps = 1e-12;
  if (!(t >= -eps && t <= 1.0 + eps))
    return 0.0;
  const double x = std::clamp(t, 0.0, 1.0) * static_cast<double>(values_.size() - 1);
  auto k = static_cast<std::size_t>(std::floor(x));
  if (k >= values_.size() - 1)
    return values_.back();
  const double lambda = x - static_cast<double>(k);
  return (1.0 - lambda) * values_[k] + lambda * values_[k + 1];
}

SampledPath SampledPath::scaled(double c) const
{
  std::vector<double> v(values_);
  for (auto& x : v)
    x *= c;
  return SampledPath(grid_, std::move(v));
}

WeightedMeasure::WeightedMeasure(MeasureKind kind, double exponent, double support_lo,
                                 double support_hi, std::vector<double> nodes)
    : kind_(kind), exponent_(exponent), lo_(support_lo), hi_(support_hi), nodes_(std::move(nodes))
{
  if (kind_ == MeasureKind::lebesgue && exponent_ != 0.0)
    throw std::invalid_argument("lebesgue measure must have exponent 0");
  if (!(lo_ < hi_) || !std::isfinite(lo_) || !std::isfinite(hi_))
    throw std::invalid_argument("measure support must be a finite interval lo < hi");
  if (kind_ == MeasureKind::power) {
    if (lo_ < 0.0)
      throw std::invalid_argument("power measure support must lie in [0, inf)");
    if (exponent_ <= -1.0 && lo_ <= 0.0)
      throw std::invalid_argument("power density with exponent <= -1 needs support bounded away from 0");
  }
  if (nodes_.empty())
    throw std::invalid_argument("measure needs at least one quadrature node");
  const double tol = 1e-12 * std::max(1.0, hi_ - lo_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i] < lo_ - tol || nodes_[i] > hi_ + tol)
      throw std::invalid_argument("quadrature node outside the measure support");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
      throw std::invalid_argument("quadrature nodes must be strictly increasing");
  }
  if (kind_ == MeasureKind::power && exponent_ < 0.0 && nodes_.front() <= 0.0)
    throw std::invalid_argument("power density is singular at a node placed at 0");

  const std::size_t n = nodes_.size();
  weights_.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double half = 0.5 * (nodes_[i + 1] - nodes_[i]);
    weights_[i] += half;
    weights_[i + 1] += half;
  }
  for (std::size_t i = 0; i < n; ++i)
    weights_[i] *= density(nodes_[i]);
}

double WeightedMeasure::density(double x) const
{
  if (kind_ == MeasureKind::lebesgue || exponent_ == 0.0)
    return 1.0;
  return std::pow(x, exponent_);
}

WeightedMeasure make_power_measure(double exponent, double delta_min, std::size_t n)
{
  if (!(delta_min > 0.0 && delta_min < 1.0))
    throw std::invalid_argument("delta_min must lie in (0, 1)");
  return make_power_measure(exponent, delta_min, 1.0, n);
}

WeightedMeasure make_power_measure(double exponent, double lo, double hi, std::size_t n)
{
  if (!(lo > 0.0 && lo < hi))
    throw std::invalid_argument("power measure needs 0 < lo < hi");
  if (n < 2)
    throw std::invalid_argument("power measure needs at least 2 nodes");
  if (!std::isfinite(exponent))
    throw std::invalid_argument("power measure exponent must be finite");
  std::vector<double> nodes(n);
  const double ratio = std::log(hi / lo);
  for (std::size_t i = 0; i < n; ++i)
    nodes[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
  nodes.front() = lo;
  nodes.back() = hi;
  return WeightedMeasure(MeasureKind::power, exponent, lo, hi, std::move(nodes));
}

WeightedMeasure make_lebesgue_measure(double lo, double hi, std::size_t n)
{
  if (n < 2)
    throw std::invalid_argument("lebesgue measure needs at least 2 nodes");
  if (!(lo < hi))
    throw std::invalid_argument("lebesgue measure needs lo < hi");
  std::vector<double> nodes(n);
  for (std::size_t i = 0; i < n; ++i)
    nodes[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  nodes.back() = hi;
  return WeightedMeasure(MeasureKind::lebesgue, 0.0, lo, hi, std::move(nodes));
}

WeightedMeasure lebesgue_on(const UnitGrid& grid)
{
  return WeightedMeasure(MeasureKind::lebesgue, 0.0, 0.0, 1.0, grid.nodes());
}

double integrate(std::span<const double> values, const WeightedMeasure& measure)
{
  if (values.size() != measure.size())
    throw std::invalid_argument("integrand has " + std::to_string(values.size()) +
                                " values for " + std::to_string(measure.size()) + " nodes");
  const auto w = measure.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]))
      throw std::invalid_argument("integrand is not finite");
    sum += w[i] * values[i];
  }
  return sum;
}

}  // namespace besovlab
