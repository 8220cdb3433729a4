#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "besovlab/besov.hpp"
#include "besovlab/errors.hpp"

using namespace besovlab;

namespace {

SampledPath identity_path(std::size_t n)
{
  const UnitGrid g(n);
  return SampledPath(g, g.nodes());
}

SampledPath smooth_path(std::size_t n)
{
  const UnitGrid g(n);
  auto t = g.nodes();
  for (auto& x : t)
    x = std::sin(3.0 * x) + 0.5 * x * x;
  return SampledPath(g, t);
}

SampledPath random_pl_path(std::mt19937_64& rng, std::size_t n)
{
  // piecewise linear through 9 random knots
  std::normal_distribution<double> nd;
  std::vector<double> knots(9);
  for (auto& k : knots)
    k = nd(rng);
  const UnitGrid g(n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.node(i) * 8.0;
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(x), 7);
    const double l = x - static_cast<double>(k);
    v[i] = (1.0 - l) * knots[k] + l * knots[k + 1];
  }
  return SampledPath(g, v);
}

const BesovParams kUnitParams(Exponent(1), Exponent(1), Exponent(1), 0.5);

}  // namespace

TEST_CASE("shift difference under zero extension")
{
  const auto f = identity_path(2049);
  const auto d = shift_difference(f, 0.25);
  CHECK(d(0.5) == doctest::Approx(0.25));
  CHECK(d(0.9) == doctest::Approx(-0.9));
  const auto z = shift_difference(f, 0.0);
  CHECK(*std::max_element(z.values().begin(), z.values().end()) == 0.0);
  const SampledPath zero(UnitGrid(9), std::vector<double>(9, 0.0));
  CHECK(lp_norm(shift_difference(zero, 0.3), Exponent(1), lebesgue_on(zero.grid())) == 0.0);
  CHECK_THROWS_AS(shift_difference(f, 1.5), std::invalid_argument);
}

TEST_CASE("modulus of continuity of f(t)=t")
{
  const auto f = identity_path(2049);
  CHECK(modulus_continuity(f, 0.0, Exponent(1)) == 0.0);
  CHECK(modulus_continuity(f, 0.1, Exponent(1)) == doctest::Approx(0.185).epsilon(0.001 / 0.185));
  CHECK(modulus_continuity(f, 0.05, Exponent::infinity()) == doctest::Approx(1.0));
  CHECK_THROWS_AS(modulus_continuity(f, 1.5, Exponent(1)), std::invalid_argument);
  CHECK_THROWS_AS(modulus_continuity(f, 0.5, Exponent(1), 1), std::invalid_argument);
}

TEST_CASE("q-averaged modulus of f(t)=t")
{
  const auto f = identity_path(2049);
  // (0.01 - 0.0005) + (0.005 - 0.001/6): negative shifts lose only the left boundary piece
  CHECK(std::abs(modulus_q(f, 0.1, Exponent(1), Exponent(1)) - 0.014333333333333333) <= 1e-3);
  CHECK(modulus_q(f, 0.1, Exponent(1), Exponent(1)) == doctest::Approx(0.014333333333333333).epsilon(1e-3));
  CHECK(modulus_q(f, 0.2, Exponent(2), Exponent::infinity()) == modulus_continuity(f, 0.2, Exponent(2)));
  const SampledPath zero(UnitGrid(9), std::vector<double>(9, 0.0));
  CHECK(modulus_q(zero, 0.5, Exponent(2), Exponent(3)) == 0.0);
}

TEST_CASE("moduli are nondecreasing in delta")
{
  std::mt19937_64 rng(1);
  const auto f = random_pl_path(rng, 257);
  double prev_c = 0.0, prev_q = 0.0;
  for (double d = 0.0; d <= 1.0; d += 0.05) {
    const double c = modulus_continuity(f, d, Exponent(2));
    const double q = modulus_q(f, d, Exponent(2), Exponent(2));
    // the h-grid scales with delta, so the sup is monotone only up to its resolution
    CHECK(c >= prev_c * (1.0 - 2e-3));
    CHECK(q >= prev_q - 1e-12);
    prev_c = c;
    prev_q = q;
  }
}

TEST_CASE("large q approaches the sup modulus for a smooth path")
{
  const auto f = smooth_path(1025);
  const double sup = modulus_continuity(f, 1.0, Exponent(2), 257);
  const double q64 = modulus_q(f, 1.0, Exponent(2), Exponent(64), 257);
  CHECK(std::abs(q64 - sup) / sup <= 0.05);
}

TEST_CASE("gamma exponent")
{
  CHECK(gamma_exponent(BesovParams(Exponent(2), Exponent(2), Exponent(2), 0.25)) == doctest::Approx(-0.5));
  CHECK(gamma_exponent(BesovParams(Exponent(1), Exponent(1), Exponent(1), 0.0)) == doctest::Approx(0.0));
  CHECK(gamma_exponent(BesovParams(Exponent(1), Exponent(4), Exponent(2), 0.1)) == doctest::Approx(-0.7));
  CHECK_THROWS_AS(gamma_exponent(BesovParams(Exponent(1), Exponent::infinity(), Exponent(2), 0.1)),
                  std::invalid_argument);
}

TEST_CASE("params validation")
{
  CHECK_THROWS_AS(BesovParams(Exponent(1), Exponent(1), Exponent::infinity(), 0.1), std::invalid_argument);
  CHECK_THROWS_AS(BesovParams(Exponent(1), Exponent(1), Exponent(1), std::nan("")), std::invalid_argument);
}

TEST_CASE("seminorm of f(t)=t against the quadrature oracle")
{
  const auto f = identity_path(2049);
  const auto mu = besov_delta_measure(kUnitParams, 0.01, 64);
  const double v = besov_seminorm(f, kUnitParams, mu, 65, BesovKind::generalized);
  CHECK(v == doctest::Approx(0.732336).epsilon(2e-3));
  const auto fine = besov_delta_measure(kUnitParams, 0.01, 256);
  CHECK(besov_seminorm(f, kUnitParams, fine, 257, BesovKind::generalized) ==
        doctest::Approx(0.732336).epsilon(2e-4));
}

TEST_CASE("seminorm basics")
{
  const BesovParams p(Exponent(2), Exponent(2), Exponent(2), 0.2);
  const auto mu = besov_delta_measure(p, 1.0 / 257, 64);
  const SampledPath zero(UnitGrid(257), std::vector<double>(257, 0.0));
  CHECK(besov_seminorm(zero, p, mu) == 0.0);
  const SampledPath one(UnitGrid(257), std::vector<double>(257, 1.0));
  CHECK(besov_seminorm(one, p, mu) > 0.0);
  CHECK(besov_norm(one, p, mu) == doctest::Approx(1.0 + besov_seminorm(one, p, mu)));
  CHECK_THROWS_AS(besov_seminorm(one, p, nu_measure(p, 1.0 / 257, 64)), std::invalid_argument);
}

TEST_CASE("q = inf generalized equals ordinary")
{
  const BesovParams p(Exponent(2), Exponent::infinity(), Exponent(2), 0.3);
  const auto f = smooth_path(257);
  const auto mu = besov_delta_measure(p, 1.0 / 256, 32);
  CHECK(besov_seminorm(f, p, mu, 33, BesovKind::generalized) == besov_seminorm(f, p, mu, 33, BesovKind::ordinary));
}

TEST_CASE("homogeneity and triangle inequality")
{
  std::mt19937_64 rng(7);
  const BesovParams p(Exponent(2), Exponent(3), Exponent(2), 0.25);
  const auto mu = besov_delta_measure(p, 1.0 / 128, 24);
  for (int i = 0; i < 5; ++i) {
    const auto f = random_pl_path(rng, 129);
    const auto g = random_pl_path(rng, 129);
    std::vector<double> s(129);
    for (std::size_t k = 0; k < 129; ++k)
      s[k] = f[k] + g[k];
    const SampledPath fg(f.grid(), s);
    for (auto kind : {BesovKind::ordinary, BesovKind::generalized}) {
      const double a = besov_seminorm(f, p, mu, 33, kind);
      const double b = besov_seminorm(g, p, mu, 33, kind);
      CHECK(besov_seminorm(fg, p, mu, 33, kind) <= (a + b) * (1.0 + 1e-12));
      CHECK(besov_seminorm(f.scaled(-3.0), p, mu, 33, kind) == doctest::Approx(3.0 * a).epsilon(1e-12));
      CHECK(besov_norm(fg, p, mu, 33, kind) <= besov_norm(f, p, mu, 33, kind) + besov_norm(g, p, mu, 33, kind) + 1e-12);
    }
  }
}

TEST_CASE("mixed representation of f(t)=t")
{
  const auto f = identity_path(256);
  const auto nu = nu_measure(kUnitParams, 0.01, 64);
  const auto mu = besov_delta_measure(kUnitParams, 0.01, 64);
  const double direct = besov_seminorm(f, kUnitParams, mu, 65, BesovKind::generalized);
  const double mixed = seminorm_via_mixed(f, kUnitParams, 64, nu);
  CHECK(std::abs(mixed - direct) / direct <= 0.02);
  CHECK(seminorm_via_mixed(f.scaled(2.0), kUnitParams, 64, nu) == doctest::Approx(2.0 * mixed).epsilon(1e-12));
  const SampledPath zero(UnitGrid(64), std::vector<double>(64, 0.0));
  CHECK(seminorm_via_mixed(zero, kUnitParams, 16, nu) == 0.0);
}

TEST_CASE("mixed representation requires finite exponents and the nu measure")
{
  const auto f = identity_path(65);
  const BesovParams pinf(Exponent::infinity(), Exponent(1), Exponent(1), 0.5);
  CHECK_THROWS_AS(seminorm_via_mixed(f, pinf, 16, make_power_measure(-0.5, 0.01, 8)), Unsupported);
  CHECK_THROWS_AS(seminorm_via_mixed(f, kUnitParams, 16, besov_delta_measure(kUnitParams, 0.01, 8)),
                  std::invalid_argument);
}

TEST_CASE("increment field layout")
{
  const auto f = identity_path(5);
  const auto nu = make_power_measure(0.0, 0.5, 1.0, 2);
  const auto field = increment_field(f, 3, nu);
  REQUIRE(field.shape() == std::vector<std::size_t>{5, 3, 2});
  // t = 0.5, z = 1, delta = 0.5 -> f(1) - f(0.5)
  CHECK(field.values()[(2 * 3 + 2) * 2 + 0] == doctest::Approx(0.5));
  // t = 0.5, z = -1, delta = 1 -> f(-0.5) - f(0.5) = -0.5
  CHECK(field.values()[(2 * 3 + 0) * 2 + 1] == doctest::Approx(-0.5));
}
