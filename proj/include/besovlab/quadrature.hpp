#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

namespace besovlab {

/// Lebesgue exponent in [1, inf]. Construction rejects values below 1.
class Exponent
{
public:
  explicit Exponent(double value);

  static Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

  double value() const { return value_; }
  bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }

  friend bool operator==(Exponent a, Exponent b) { return a.value_ == b.value_; }
  friend bool operator<(Exponent a, Exponent b) { return a.value_ < b.value_; }

private:
  double value_;
};

/// Closed uniform grid t_i = i/(n-1) on [0, 1].
class UnitGrid
{
public:
  explicit UnitGrid(std::size_t n);

  std::size_t size() const { return n_; }
  double step() const { return 1.0 / static_cast<double>(n_ - 1); }
  double node(std::size_t i) const { return static_cast<double>(i) * step(); }
  std::vector<double> nodes() const;

  friend bool operator==(const UnitGrid& a, const UnitGrid& b) { return a.n_ == b.n_; }

private:
  std::size_t n_;
};

UnitGrid make_uniform_grid(std::size_t n);

/// Real function on [0,1] given by node values. Evaluation interpolates
/// linearly between nodes and returns 0 outside [0,1].
class SampledPath
{
public:
  SampledPath(UnitGrid grid, std::vector<double> values);

  const UnitGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  double operator()(double t) const;

  SampledPath scaled(double c) const;

private:
  UnitGrid grid_;
  std::vector<double> values_;
};

enum class MeasureKind { lebesgue, power };

/// Measure with density x^e (e = 0 for lebesgue) on a support interval,
/// discretized by the trapezoid rule on a fixed set of nodes. The density is
/// evaluated at the nodes, not integrated analytically.
class WeightedMeasure
{
public:
  WeightedMeasure(MeasureKind kind, double exponent, double support_lo, double support_hi,
                  std::vector<double> nodes);

  MeasureKind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  std::span<const double> nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }

  /// Trapezoid weights with the density folded in: integrate(v) = sum_i w_i v_i.
  std::span<const double> weights() const { return weights_; }

  double density(double x) const;

private:
  MeasureKind kind_;
  double exponent_;
  double lo_;
  double hi_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Power measure on (delta_min, 1] with n geometrically spaced nodes.
WeightedMeasure make_power_measure(double exponent, double delta_min, std::size_t n);

/// Power measure on (lo, hi] with n geometrically spaced nodes, 0 < lo < hi.
WeightedMeasure make_power_measure(double exponent, double lo, double hi, std::size_t n);

/// Lebesgue measure on [lo, hi] with n uniform nodes.
WeightedMeasure make_lebesgue_measure(double lo, double hi, std::size_t n);

/// Lebesgue measure on [0,1] whose nodes are exactly the grid nodes.
WeightedMeasure lebesgue_on(const UnitGrid& grid);

double integrate(std::span<const double> values, const WeightedMeasure& measure);

// Path CSV: header `t,value`, one row per node, uniform grid on [0,1].
SampledPath read_path_csv(std::istream& in);
void write_path_csv(std::ostream& out, const SampledPath& path);

}  // namespace besovlab
