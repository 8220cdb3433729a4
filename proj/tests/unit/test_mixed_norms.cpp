#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "besovlab/mixed_norms.hpp"

using namespace besovlab;

namespace {

SampledField two_by_two()
{
  return SampledField({2, 2}, {1.0, 0.0, 0.0, 1.0},
                      {AxisWeights::discrete({0.5, 0.5}), AxisWeights::discrete({0.5, 0.5})});
}

SampledField random_field(std::mt19937_64& rng, std::vector<std::size_t> shape, std::size_t prob_axis)
{
  std::size_t total = 1;
  for (auto s : shape)
    total *= s;
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.1, 1.0);
  std::vector<double> v(total);
  for (auto& x : v)
    x = nd(rng);
  std::vector<AxisWeights> axes;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    if (a == prob_axis) {
      axes.push_back(AxisWeights::uniform_probability(shape[a]));
    } else {
      std::vector<double> w(shape[a]);
      for (auto& x : w)
        x = ud(rng);
      axes.push_back(AxisWeights::discrete(w));
    }
  }
  return SampledField(shape, v, axes);
}

}  // namespace

TEST_CASE("2x2 field against brute force")
{
  const auto f = two_by_two();
  CHECK(mixed_norm(f, {Exponent(1), Exponent(2)}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mixed_norm(f, {Exponent(2), Exponent(1)}) == doctest::Approx(0.7071067811865476).epsilon(1e-14));
}

TEST_CASE("explicit order matches relabelled axes")
{
  std::mt19937_64 rng(5);
  const auto f = random_field(rng, {3, 4}, 99);
  const std::vector<std::size_t> rev{1, 0};
  // transpose by hand
  std::vector<double> t(12);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      t[i * 3 + j] = f.values()[j * 4 + i];
  const SampledField ft({4, 3}, t, {f.axes()[1], f.axes()[0]});
  CHECK(mixed_norm(f, {Exponent(1.5), Exponent(3)}, rev) ==
        doctest::Approx(mixed_norm(ft, {Exponent(3), Exponent(1.5)})).epsilon(1e-13));
}

TEST_CASE("weighted lp")
{
  std::vector<double> v{1.0, -3.0, 2.0};
  std::vector<double> w{0.2, 0.3, 0.5};
  CHECK(weighted_lp(v, w, Exponent::infinity()) == 3.0);
  CHECK(weighted_lp(v, w, Exponent(1)) == doctest::Approx(0.2 + 0.9 + 1.0));
  CHECK(weighted_lp(v, w, Exponent(2)) == doctest::Approx(std::sqrt(0.2 + 2.7 + 2.0)));
}

TEST_CASE("lp norm of a path")
{
  std::vector<double> v(1025);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = static_cast<double>(i) / 1024.0;
  const SampledPath f(UnitGrid(1025), v);
  CHECK(lp_norm(f, Exponent(2), lebesgue_on(f.grid())) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
  CHECK(lp_norm(f, Exponent(1), lebesgue_on(f.grid())) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(lp_norm(f, Exponent::infinity(), lebesgue_on(f.grid())) == 1.0);
  CHECK_THROWS_AS(lp_norm(f, Exponent(1), make_lebesgue_measure(-1.0, 1.0, 5)), std::invalid_argument);
}

TEST_CASE("homogeneity")
{
  std::mt19937_64 rng(11);
  const auto f = random_field(rng, {4, 5, 6}, 99);
  const ExponentVector e{Exponent(1.3), Exponent(2), Exponent(4)};
  CHECK(mixed_norm(f.scaled(-2.5), e) == doctest::Approx(2.5 * mixed_norm(f, e)).epsilon(1e-13));
}

TEST_CASE("permutation inequality on random fields")
{
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_real_distribution<double> ex(1.0, 4.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rank = 1 + trial % 2;
    std::vector<std::size_t> shape;
    ExponentVector inner;
    double pmax = 1.0;
    for (std::size_t a = 0; a < rank; ++a) {
      shape.push_back(dim(rng));
      const double p = ex(rng);
      inner.push_back(Exponent(p));
      pmax = std::max(pmax, p);
    }
    shape.push_back(dim(rng) + 1);
    const double r = pmax + ex(rng) - 1.0;
    const auto f = random_field(rng, shape, rank);
    const auto pair = permutation_pair(f, inner, Exponent(r), rank);
    CHECK(pair.lhs <= pair.rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("factorized fields give equality")
{
  // f(x, w) = g(x) h(w)
  const std::vector<double> g{1.0, -2.0, 0.5};
  const std::vector<double> h{0.3, 1.7, -0.9, 2.2};
  std::vector<double> v;
  for (double a : g)
    for (double b : h)
      v.push_back(a * b);
  const SampledField f({3, 4}, v, {AxisWeights::discrete({0.2, 0.5, 0.3}), AxisWeights::uniform_probability(4)});
  const auto pair = permutation_pair(f, {Exponent(1.5)}, Exponent(3), 1);
  CHECK(std::abs(pair.lhs - pair.rhs) / pair.rhs <= 1e-12);
}

TEST_CASE("permutation preconditions")
{
  std::mt19937_64 rng(3);
  const auto f = random_field(rng, {3, 4}, 1);
  CHECK_THROWS_AS(permutation_pair(f, {Exponent(3)}, Exponent(2), 1), std::invalid_argument);
  const auto g = random_field(rng, {3, 4}, 99);
  CHECK_THROWS_AS(permutation_pair(g, {Exponent(1)}, Exponent(2), 1), std::invalid_argument);
}

TEST_CASE("field validation")
{
  CHECK_THROWS_AS(SampledField({2, 2}, {1.0, 2.0, 3.0}, {AxisWeights::uniform_probability(2), AxisWeights::uniform_probability(2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SampledField({2, 2}, {1.0, 2.0, 3.0, 4.0}, {AxisWeights::uniform_probability(2)}), std::invalid_argument);
  CHECK_THROWS_AS(SampledField({2, 3}, std::vector<double>(6, 1.0),
                               {AxisWeights::uniform_probability(2), AxisWeights::uniform_probability(2)}),
                  std::invalid_argument);
  const auto f = two_by_two();
  CHECK_THROWS_AS(mixed_norm(f, {Exponent(1)}), std::invalid_argument);
  CHECK(AxisWeights::uniform_probability(4).is_probability());
  CHECK_FALSE(AxisWeights::discrete({1.0, 1.0}).is_probability());
}
