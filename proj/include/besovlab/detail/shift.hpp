#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

#include "besovlab/detail/powers.hpp"

namespace besovlab::detail {

/// Node offset and interpolation weight of the shift t -> t + h on a uniform
/// grid of n nodes. Shifts landing within 1e-12 cells of a node snap to it.
struct ShiftPlan
{
  long offset;
  double lambda;

  ShiftPlan(double h, std::size_t n)
  {
    const double x = h * static_cast<double>(n - 1);
    double k = std::floor(x);
    double lam = x - k;
    if (lam < 1e-12) {
      lam = 0.0;
    } else if (lam > 1.0 - 1e-12) {
      lam = 0.0;
      k += 1.0;
    }
    offset = static_cast<long>(k);
    lambda = lam;
  }

  /// True when t_i + h lies in [0, 1].
  bool inside(std::size_t i, std::size_t n) const
  {
    const long j = static_cast<long>(i) + offset;
    const long last = static_cast<long>(n) - 1;
    if (lambda == 0.0)
      return j >= 0 && j <= last;
    return j >= 0 && j + 1 <= last;
  }

  /// f(t_i + h) under zero extension and linear interpolation.
  double value(std::span<const double> f, std::size_t i) const
  {
    const std::size_t n = f.size();
    if (!inside(i, n))
      return 0.0;
    const auto j = static_cast<std::size_t>(static_cast<long>(i) + offset);
    if (lambda == 0.0)
      return f[j];
    return (1.0 - lambda) * f[j] + lambda * f[j + 1];
  }
};

/// sum_i w_i |f(t_i + h) - f(t_i)|^p. With interior_only, nodes whose shift
/// leaves [0,1] are dropped instead of being zero-extended.
inline double shifted_power_sum(std::span<const double> f, std::span<const double> w, double h,
                                const AbsPower& pw, bool interior_only = false)
{
  const std::size_t n = f.size();
  const ShiftPlan plan(h, n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (interior_only && !plan.inside(i, n))
      continue;
    sum += w[i] * pw(plan.value(f, i) - f[i]);
  }
  return sum;
}

inline double shifted_max(std::span<const double> f, double h, bool interior_only = false)
{
  const std::size_t n = f.size();
  const ShiftPlan plan(h, n);
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (interior_only && !plan.inside(i, n))
      continue;
    m = std::max(m, std::abs(plan.value(f, i) - f[i]));
  }
  return m;
}

}  // namespace besovlab::detail
