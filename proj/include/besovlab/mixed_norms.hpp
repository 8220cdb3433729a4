#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "besovlab/quadrature.hpp"

namespace besovlab {

using ExponentVector = std::vector<Exponent>;

/// Node weights of one axis of a sampled field: either the trapezoid weights
/// of a WeightedMeasure or a discrete probability vector (Monte Carlo axis).
class AxisWeights
{
public:
  static AxisWeights from_measure(const WeightedMeasure& measure);
  static AxisWeights uniform_probability(std::size_t replicas);
  /// Arbitrary nonnegative weights; flagged as a probability axis iff they sum to 1.
  static AxisWeights discrete(std::vector<double> weights);

  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  bool is_probability() const { return probability_; }

private:
  AxisWeights(std::vector<double> w, bool probability) : weights_(std::move(w)), probability_(probability) {}

  std::vector<double> weights_;
  bool probability_;
};

/// Dense row-major array with one AxisWeights per axis.
class SampledField
{
public:
  SampledField(std::vector<std::size_t> shape, std::vector<double> values, std::vector<AxisWeights> axes);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::span<const double> values() const { return values_; }
  const std::vector<AxisWeights>& axes() const { return axes_; }
  std::size_t rank() const { return shape_.size(); }

  SampledField scaled(double c) const;

private:
  std::vector<std::size_t> shape_;
  std::vector<double> values_;
  std::vector<AxisWeights> axes_;
};

/// (sum_i w_i |v_i|^p)^{1/p}; for p = inf, max_i |v_i| ignoring weights.
double weighted_lp(std::span<const double> values, std::span<const double> weights, Exponent p);

/// |f|_p against the measure; the path is evaluated at the measure's nodes.
double lp_norm(const SampledPath& path, Exponent p, const WeightedMeasure& measure);

/// Iterated norm: axis 0 innermost with exponents[0], then axis 1, ...
double mixed_norm(const SampledField& field, const ExponentVector& exponents);

/// Iterated norm with an explicit integration order (innermost first).
/// exponents[k] belongs to axis k regardless of the order.
double mixed_norm(const SampledField& field, const ExponentVector& exponents,
                  std::span<const std::size_t> order);

struct PermutationPair
{
  double lhs;  ///< probability axis outermost
  double rhs;  ///< probability axis innermost
};

/// Both sides of the permutation inequality. inner_exponents lists the
/// exponents of the non-probability axes in axis order.
PermutationPair permutation_pair(const SampledField& field, const ExponentVector& inner_exponents,
                                 Exponent r, std::size_t prob_axis);

}  // namespace besovlab
