#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "besovlab/entropy.hpp"
#include "besovlab/errors.hpp"
#include "besovlab/process_models.hpp"

using namespace besovlab;

namespace {

std::vector<double> linspace(double a, double b, std::size_t n)
{
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return x;
}

}  // namespace

TEST_CASE("metric validation")
{
  CHECK_THROWS_AS(FiniteMetricSpace({0.0, 1.0}, {0.0, 1.0, 2.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteMetricSpace({0.0, 1.0}, {1.0, 1.0, 1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteMetricSpace({0.0, 1.0}, {0.0, -1.0, -1.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteMetricSpace({0.0, 1.0}, {0.0, 1.0, 1.0}), std::invalid_argument);
  // d(0,2) = 3 > d(0,1) + d(1,2)
  CHECK_THROWS_AS(FiniteMetricSpace({0.0, 1.0, 2.0}, {0, 1, 3, 1, 0, 1, 3, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteMetricSpace({}, {}), std::invalid_argument);
}

TEST_CASE("basic geometry")
{
  const auto s = line_space({0.0, 0.5, 0.5, 2.0});
  CHECK(s.diameter() == 2.0);
  CHECK(s.min_positive_distance() == 0.5);
  CHECK(s.distinct_points() == 3);
  const auto& r = s.greedy_radii();
  CHECK(r.back() == 0.0);
  for (std::size_t k = 1; k < r.size(); ++k)
    CHECK(r[k] <= r[k - 1]);
}

TEST_CASE("greedy and exhaustive covering on a line")
{
  const auto s = line_space(linspace(-1.0, 1.0, 201));
  const std::size_t greedy = covering_number(s, 0.25);
  const std::size_t best = minimal_covering_number(s, 0.25);
  CHECK(best == 4);
  CHECK(greedy == 5);
  CHECK(greedy <= 2 * best);
  CHECK(covering_number(s, 1.0) == 2);
  CHECK(covering_number(s, 2.0) == 1);
  CHECK(minimal_covering_number(s, 1.0) == 1);
  CHECK(covering_number(s, 1e-6) == 201);
  CHECK_THROWS_AS(covering_number(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(minimal_covering_number(s, 0.05, 10), BudgetExceeded);
}

TEST_CASE("covering number is nonincreasing in epsilon")
{
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  std::vector<double> pts(60);
  for (auto& x : pts)
    x = u(rng);
  const auto s = line_space(pts);
  std::size_t prev = s.size() + 1;
  for (double e = 0.01; e < 3.0; e += 0.01) {
    const auto n = covering_number(s, e);
    CHECK(n <= prev);
    prev = n;
  }
}

TEST_CASE("entropy integral of two points")
{
  const auto s = line_space({0.0, 1.0});
  CHECK(entropy_integral_exact(s, Exponent(2)) == doctest::Approx(9.0 * std::sqrt(2.0)));
  CHECK(entropy_integral(s, Exponent(2)) == doctest::Approx(9.0 * std::sqrt(2.0)).epsilon(1e-3));
  CHECK(entropy_integral(s, Exponent::infinity()) == 9.0);
  CHECK(entropy_integral(line_space({0.3, 0.3}), Exponent(2)) == 0.0);
  CHECK_THROWS_AS(entropy_integral(s, Exponent(2), 1), std::invalid_argument);
}

TEST_CASE("quadrature and exact entropy integrals agree")
{
  const auto s = line_space(linspace(0.0, 1.0, 33));
  for (double m : {1.0, 2.0, 4.0}) {
    const double exact = entropy_integral_exact(s, Exponent(m));
    CHECK(std::abs(entropy_integral(s, Exponent(m), 2049) - exact) / exact < 0.01);
  }
  // larger m flattens N^{1/m}
  CHECK(entropy_integral_exact(s, Exponent(8)) < entropy_integral_exact(s, Exponent(2)));
}

TEST_CASE("beta of m with the wiener lambda curve")
{
  const auto nu = make_power_measure(-0.2, 1e-3, std::exp(-1.0), 2048);
  std::vector<double> curve;
  for (double d : nu.nodes())
    curve.push_back(wiener_lambda(d, 4.0));
  CHECK(beta_of_m(1.0, curve, Exponent(2), nu) == doctest::Approx(0.7558687304089214).epsilon(1e-3));
  CHECK(beta_of_m(2.5, curve, Exponent(2), nu) == doctest::Approx(2.5 * beta_of_m(1.0, curve, Exponent(2), nu)));
  CHECK(beta_of_m(0.0, curve, Exponent(2), nu) == 0.0);
  CHECK_THROWS_AS(beta_of_m(-1.0, curve, Exponent(2), nu), std::invalid_argument);
  curve.pop_back();
  CHECK_THROWS_AS(beta_of_m(1.0, curve, Exponent(2), nu), std::invalid_argument);
}
