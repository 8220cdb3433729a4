#include "besovlab/mixed_norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "besovlab/detail/powers.hpp"

namespace besovlab {

AxisWeights AxisWeights::from_measure(const WeightedMeasure& measure)
{
  return AxisWeights({measure.weights().begin(), measure.weights().end()}, false);
}

AxisWeights AxisWeights::uniform_probability(std::size_t replicas)
{
  if (replicas == 0)
    throw std::invalid_argument("probability axis needs at least one replica");
  return AxisWeights(std::vector<double>(replicas, 1.0 / static_cast<double>(replicas)), true);
}

AxisWeights AxisWeights::discrete(std::vector<double> weights)
{
  if (weights.empty())
    throw std::invalid_argument("axis needs at least one weight");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("axis weights must be finite and nonnegative");
    total += w;
  }
  const bool prob = std::abs(total - 1.0) <= 1e-12 * static_cast<double>(weights.size());
  return AxisWeights(std::move(weights), prob);
}

SampledField::SampledField(std::vector<std::size_t> shape, std::vector<double> values,
                           std::vector<AxisWeights> axes)
    : shape_(std::move(shape)), values_(std::move(values)), axes_(std::move(axes))
{
  if (shape_.empty())
    throw std::invalid_argument("field needs at least one axis");
  if (shape_.size() != axes_.size())
    throw std::invalid_argument("field has " + std::to_string(shape_.size()) + " axes but " +
                                std::to_string(axes_.size()) + " weight sets");
  const std::size_t total =
      std::accumulate(shape_.begin(), shape_.end(), std::size_t{1}, std::multiplies<>());
  if (total != values_.size())
    throw std::invalid_argument("field shape does not match the number of values");
  for (std::size_t k = 0; k < shape_.size(); ++k) {
    if (axes_[k].size() != shape_[k])
      throw std::invalid_argument("axis " + std::to_string(k) + " weight count does not match its length");
  }
}

SampledField SampledField::scaled(double c) const
{
  std::vector<double> v(values_);
  for (auto& x : v)
    x *= c;
  return SampledField(shape_, std::move(v), axes_);
}

double weighted_lp(std::span<const double> values, std::span<const double> weights, Exponent p)
{
  if (values.size() != weights.size())
    throw std::invalid_argument("values and weights differ in length");
  if (p.is_infinite()) {
    double m = 0.0;
    for (double v : values)
      m = std::max(m, std::abs(v));
    return m;
  }
  const detail::AbsPower pw(p.value());
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    sum += weights[i] * pw(values[i]);
  return pw.root(sum);
}

double lp_norm(const SampledPath& path, Exponent p, const WeightedMeasure& measure)
{
  if (measure.support_lo() < 0.0 || measure.support_hi() > 1.0)
    throw std::invalid_argument("lp_norm measure must be supported inside [0, 1]");
  const auto nodes = measure.nodes();
  std::vector<double> v(nodes.size());
  const bool on_grid = nodes.size() == path.grid().size() && measure.kind() == MeasureKind::lebesgue &&
                       nodes.front() == 0.0 && nodes.back() == 1.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    v[i] = on_grid ? path[i] : path(nodes[i]);
  return weighted_lp(v, measure.weights(), p);
}

namespace {

// Reduces one axis of a row-major array: out[o, in] = |a[o, :, in]|_p.
std::vector<double> reduce_axis(std::span<const double> a, std::size_t outer, std::size_t len,
                                std::size_t inner, std::span<const double> w, Exponent p)
{
  std::vector<double> out(outer * inner, 0.0);
  if (p.is_infinite()) {
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t k = 0; k < len; ++k) {
        const double* row = a.data() + (o * len + k) * inner;
        double* acc = out.data() + o * inner;
        for (std::size_t i = 0; i < inner; ++i)
          acc[i] = std::max(acc[i], std::abs(row[i]));
      }
    return out;
  }
  const detail::AbsPower pw(p.value());
  for (std::size_t o = 0; o < outer; ++o) {
    double* acc = out.data() + o * inner;
    for (std::size_t k = 0; k < len; ++k) {
      const double* row = a.data() + (o * len + k) * inner;
      const double wk = w[k];
      for (std::size_t i = 0; i < inner; ++i)
        acc[i] += wk * pw(row[i]);
    }
    for (std::size_t i = 0; i < inner; ++i)
      acc[i] = pw.root(acc[i]);
  }
  return out;
}

}  // namespace

double mixed_norm(const SampledField& field, const ExponentVector& exponents)
{
  std::vector<std::size_t> order(field.rank());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return mixed_norm(field, exponents, order);
}

double mixed_norm(const SampledField& field, const ExponentVector& exponents,
                  std::span<const std::size_t> order)
{
  const std::size_t rank = field.rank();
  if (exponents.size() != rank)
    throw std::invalid_argument("field has " + std::to_string(rank) + " axes but " +
                                std::to_string(exponents.size()) + " exponents were given");
  if (order.size() != rank)
    throw std::invalid_argument("axis order must list every axis exactly once");
  std::vector<bool> seen(rank, false);
  for (std::size_t a : order) {
    if (a >= rank || seen[a])
      throw std::invalid_argument("axis order must list every axis exactly once");
    seen[a] = true;
  }

  // Remaining axes, in storage order, as indices into the original field.
  std::vector<std::size_t> remaining(rank);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::vector<double> current(field.values().begin(), field.values().end());
  const auto& shape = field.shape();

  for (std::size_t axis : order) {
    const auto pos = static_cast<std::size_t>(std::find(remaining.begin(), remaining.end(), axis) -
                                              remaining.begin());
    std::size_t outer = 1;
    std::size_t inner = 1;
    for (std::size_t j = 0; j < pos; ++j)
      outer *= shape[remaining[j]];
    for (std::size_t j = pos + 1; j < remaining.size(); ++j)
      inner *= shape[remaining[j]];
    current = reduce_axis(current, outer, shape[axis], inner, field.axes()[axis].weights(), exponents[axis]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return current.front();
}

PermutationPair permutation_pair(const SampledField& field, const ExponentVector& inner_exponents,
                                 Exponent r, std::size_t prob_axis)
{
  const std::size_t rank = field.rank();
  if (prob_axis >= rank)
    throw std::invalid_argument("probability axis index out of range");
  if (inner_exponents.size() + 1 != rank)
    throw std::invalid_argument("need one inner exponent per non-probability axis");
  if (!field.axes()[prob_axis].is_probability())
    throw std::invalid_argument("probability axis weights must sum to 1");
  for (const auto& p : inner_exponents) {
    if (r < p)
      throw std::invalid_argument("permutation inequality needs r >= max inner exponent");
  }

  ExponentVector exps;
  std::vector<std::size_t> inner_order;
  for (std::size_t a = 0, k = 0; a < rank; ++a) {
    if (a == prob_axis) {
      exps.push_back(r);
    } else {
      exps.push_back(inner_exponents[k++]);
      inner_order.push_back(a);
    }
  }
  std::vector<std::size_t> outer_last(inner_order);
  outer_last.push_back(prob_axis);
  std::vector<std::size_t> inner_first{prob_axis};
  inner_first.insert(inner_first.end(), inner_order.begin(), inner_order.end());

  return {mixed_norm(field, exps, outer_last), mixed_norm(field, exps, inner_first)};
}

}  // namespace besovlab
