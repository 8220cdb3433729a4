#pragma once

#include <stdexcept>

namespace besovlab {

/// Operation not defined for the given model or exponent (e.g. infinite
/// exponents in the mixed-norm representation, analytic moments of a
/// non-Gaussian model).
class Unsupported : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Floating-point failure that survived the documented recovery policy.
class NumericError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A normalized distance whose normalizer vanishes.
class UndefinedDistance : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Monte Carlo experiment larger than the configured path budget.
class BudgetExceeded : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// File or directory could not be read or written.
class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace besovlab
