#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "besovlab/grand_lebesgue.hpp"
#include "besovlab/process_models.hpp"

using namespace besovlab;

TEST_CASE("psi construction and support")
{
  const auto s = PsiFunction::power(2.0, 10.0);
  CHECK(s(4.0) == doctest::Approx(2.0));
  CHECK(s.in_support(1.0));
  CHECK_FALSE(s.in_support(10.0));
  CHECK_FALSE(s.in_support(0.5));
  const auto t = PsiFunction::tabulated({{2.0, 1.0}, {4.0, 3.0}}, 4.0);
  CHECK(t.in_support(4.0));
  CHECK(t(4.0) == 3.0);
  CHECK(std::isinf(t(3.0)));
  CHECK_THROWS_AS(PsiFunction::power(0.0), std::invalid_argument);
  CHECK_THROWS_AS(PsiFunction::power(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PsiFunction::tabulated({}), std::invalid_argument);
  CHECK_THROWS_AS(PsiFunction::tabulated({{4.0, 1.0}, {2.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(PsiFunction::tabulated({{2.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(PsiFunction::tabulated({{0.5, 1.0}}), std::invalid_argument);
}

TEST_CASE("psi spec parsing")
{
  CHECK(parse_psi("sqrt").l() == 2.0);
  CHECK(parse_psi("power:1.5").l() == 1.5);
  CHECK_THROWS_AS(parse_psi("power:"), std::invalid_argument);
  CHECK_THROWS_AS(parse_psi("power:2x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_psi("exp"), std::invalid_argument);
}

TEST_CASE("gaussian moments have unit-order sqrt norm")
{
  MomentCurve curve;
  for (double m : log_spaced(2.0, 200.0, 400))
    curve.push_back({m, gaussian_abs_moment(m)});
  CHECK(gls_norm(curve, PsiFunction::power(2.0)) == doctest::Approx(0.7071067811865475).epsilon(1e-12));
}

TEST_CASE("degenerate psi gives the plain Lr norm")
{
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  std::vector<double> x(500);
  for (auto& v : x)
    v = nd(rng);
  const std::vector<double> ms{2.0, 3.0, 5.0};
  const auto curve = empirical_moment_curve(x, ms);
  CHECK(gls_norm(curve, PsiFunction::degenerate(3.0)) == curve[1].value);
}

TEST_CASE("norm is homogeneous and rejects orders outside the support")
{
  const MomentCurve curve{{2.0, 1.0}, {4.0, 1.5}};
  const MomentCurve scaled{{2.0, 3.0}, {4.0, 4.5}};
  const auto psi = PsiFunction::power(2.0);
  CHECK(gls_norm(scaled, psi) == doctest::Approx(3.0 * gls_norm(curve, psi)));
  CHECK_THROWS_AS(gls_norm(curve, PsiFunction::power(2.0, 3.0)), std::invalid_argument);
  CHECK_THROWS_AS(gls_norm({}, psi), std::invalid_argument);
}

TEST_CASE("empirical moment curve")
{
  const std::vector<double> x{1.0, -1.0, 1.0, -1.0};
  const std::vector<double> ms{1.0, 2.0, 7.0};
  for (const auto& pt : empirical_moment_curve(x, ms))
    CHECK(pt.value == doctest::Approx(1.0));
  const std::vector<double> y{0.0, 2.0};
  CHECK(empirical_moment_curve(y, std::vector<double>{2.0})[0].value == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(empirical_moment_curve(std::vector<double>{}, ms), std::invalid_argument);
}

TEST_CASE("young fenchel of a parabola")
{
  Curve g;
  for (double p = 0.0; p <= 20.0; p += 0.001) {
    g.p.push_back(p);
    g.g.push_back(0.5 * p * p);
  }
  CHECK(young_fenchel(g, 3.0) == doctest::Approx(4.5).epsilon(1e-6));
  CHECK(young_fenchel(g, -3.0) == doctest::Approx(4.5).epsilon(1e-6));
  CHECK_THROWS_AS(young_fenchel(Curve{}, 1.0), std::invalid_argument);
}

TEST_CASE("sqrt tail against the closed form")
{
  const auto psi = parse_psi("sqrt");
  CHECK(tail_bound(psi, 10.0) == doctest::Approx(1.0270685590918262e-08).epsilon(1e-4));
  for (double u = 3.0; u <= 20.0; u += 0.5) {
    const double closed = u * u / (2.0 * std::exp(1.0));
    CHECK(std::abs(-std::log(tail_bound(psi, u)) - closed) / closed < 1e-4);
  }
  CHECK_THROWS_AS(tail_bound(psi, 2.0), std::invalid_argument);
}

TEST_CASE("power tail against the closed form")
{
  const double l = 1.5;
  const auto psi = PsiFunction::power(l);
  const double u = 5.0;
  const double closed = std::pow(u, l) / (l * std::exp(1.0));
  CHECK(-std::log(tail_bound(psi, u)) == doctest::Approx(closed).epsilon(1e-4));
}

TEST_CASE("tabulated tail is the best moment bound")
{
  const auto psi = PsiFunction::tabulated({{2.0, 1.0}, {4.0, 2.0}});
  CHECK(tail_bound(psi, 3.0) == doctest::Approx(1.0 / 9.0));
  CHECK(tail_bound(psi, 10.0) == doctest::Approx(std::pow(0.2, 4)));
  CHECK_THROWS_AS(tilde_psi(PsiFunction::power(2.0)), std::invalid_argument);
}

TEST_CASE("fitted psi has unit norm")
{
  const MomentCurve curve{{2.0, 0.7}, {4.0, 1.1}, {8.0, 1.9}};
  const auto psi = fit_psi_from_moments(curve);
  CHECK(gls_norm(curve, psi) == doctest::Approx(1.0));
  CHECK_THROWS_AS(fit_psi_from_moments({{2.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("grids")
{
  const auto g = default_moment_grid();
  CHECK(g.front() == 1.0);
  CHECK(g.back() == 32.0);
  const auto x = log_spaced(1.0, 100.0, 3);
  CHECK(x[1] == doctest::Approx(10.0));
  CHECK_THROWS_AS(log_spaced(0.0, 1.0, 3), std::invalid_argument);
  const auto yf = young_fenchel_grid(PsiFunction::power(2.0, 5.0), 3.0);
  CHECK(yf.back() < 5.0);
}
