#pragma once

#include <cmath>

namespace besovlab::detail {

/// |x|^p and its inverse with fast paths for the common integer exponents.
class AbsPower
{
public:
  explicit AbsPower(double p) : p_(p), code_(p == 1.0 ? 1 : p == 2.0 ? 2 : p == 4.0 ? 4 : 0) {}

  double operator()(double x) const
  {
    const double a = std::abs(x);
    switch (code_) {
    case 1: return a;
    case 2: return a * a;
    case 4: { const double b = a * a; return b * b; }
    default: return a == 0.0 ? 0.0 : std::pow(a, p_);
    }
  }

  double root(double s) const
  {
    switch (code_) {
    case 1: return s;
    case 2: return std::sqrt(s);
    default: return s <= 0.0 ? 0.0 : std::pow(s, 1.0 / p_);
    }
  }

  double exponent() const { return p_; }

private:
  double p_;
  int code_;
};

}  // namespace besovlab::detail
