#include "besovlab/besov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "besovlab/detail/shift.hpp"
#include "besovlab/errors.hpp"

namespace besovlab {

BesovParams::BesovParams(Exponent p_, Exponent q_, Exponent s_, double alpha_)
    : p(p_), q(q_), s(s_), alpha(alpha_)
{
  if (s.is_infinite())
    throw std::invalid_argument("Besov exponent s must be finite");
  if (!std::isfinite(alpha))
    throw std::invalid_argument("Besov smoothness alpha must be finite");
}

namespace {

void check_delta(double delta)
{
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("delta must lie in [0, 1]");
}

void check_h_nodes(std::size_t h_nodes)
{
  if (h_nodes < 2)
    throw std::invalid_argument("h-grid needs at least 2 nodes");
}

// |S_h f|_p on the path's own grid (trapezoid weights in t).
double shift_norm(std::span<const double> f, std::span<const double> tw, double h, Exponent p)
{
  if (p.is_infinite())
    return detail::shifted_max(f, h);
  const detail::AbsPower pw(p.value());
  return pw.root(detail::shifted_power_sum(f, tw, h, pw));
}

double h_node(double delta, std::size_t j, std::size_t h_nodes)
{
  if (j + 1 == h_nodes)
    return delta;
  return -delta + 2.0 * delta * static_cast<double>(j) / static_cast<double>(h_nodes - 1);
}

double modulus_sup(std::span<const double> f, std::span<const double> tw, double delta, Exponent p,
                   std::size_t h_nodes)
{
  if (delta == 0.0)
    return 0.0;
  double m = 0.0;
  for (std::size_t j = 0; j < h_nodes; ++j)
    m = std::max(m, shift_norm(f, tw, h_node(delta, j, h_nodes), p));
  return m;
}

double modulus_avg(std::span<const double> f, std::span<const double> tw, double delta, Exponent p,
                   Exponent q, std::size_t h_nodes)
{
  if (q.is_infinite())
    return modulus_sup(f, tw, delta, p, h_nodes);
  if (delta == 0.0)
    return 0.0;
  const detail::AbsPower qw(q.value());
  const double dh = 2.0 * delta / static_cast<double>(h_nodes - 1);
  double sum = 0.0;
  for (std::size_t j = 0; j < h_nodes; ++j) {
    const double w = (j == 0 || j + 1 == h_nodes) ? 0.5 * dh : dh;
    sum += w * qw(shift_norm(f, tw, h_node(delta, j, h_nodes), p));
  }
  return qw.root(sum);
}

void check_measure_exponent(const WeightedMeasure& m, double expected, const char* what)
{
  const bool ok = (m.kind() == MeasureKind::power && std::abs(m.exponent() - expected) <= 1e-12) ||
                  (m.kind() == MeasureKind::lebesgue && expected == 0.0);
  if (!ok)
    throw std::invalid_argument(std::string(what) + " measure must have density exponent " +
                                std::to_string(expected) + ", got " + std::to_string(m.exponent()));
  if (m.support_hi() > 1.0 || m.nodes().front() <= 0.0)
    throw std::invalid_argument(std::string(what) + " measure must live on (0, 1]");
}

}  // namespace

SampledPath shift_difference(const SampledPath& f, double h)
{
  if (!(std::abs(h) <= 1.0))
    throw std::invalid_argument("shift must satisfy |h| <= 1");
  const auto v = f.values();
  const detail::ShiftPlan plan(h, v.size());
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = plan.value(v, i) - v[i];
  return SampledPath(f.grid(), std::move(out));
}

double modulus_continuity(const SampledPath& f, double delta, Exponent p, std::size_t h_nodes)
{
  check_delta(delta);
  check_h_nodes(h_nodes);
  const auto t = lebesgue_on(f.grid());
  return modulus_sup(f.values(), t.weights(), delta, p, h_nodes);
}

double modulus_q(const SampledPath& f, double delta, Exponent p, Exponent q, std::size_t h_nodes)
{
  check_delta(delta);
  check_h_nodes(h_nodes);
  const auto t = lebesgue_on(f.grid());
  return modulus_avg(f.values(), t.weights(), delta, p, q, h_nodes);
}

double gamma_exponent(const BesovParams& params)
{
  if (params.q.is_infinite())
    throw std::invalid_argument("gamma exponent needs finite q");
  const double s = params.s.value();
  return s / params.q.value() - params.alpha * s - 1.0;
}

WeightedMeasure besov_delta_measure(const BesovParams& params, double delta_min, std::size_t nodes)
{
  return make_power_measure(-1.0 - params.alpha * params.s.value(), delta_min, nodes);
}

WeightedMeasure nu_measure(const BesovParams& params, double delta_min, std::size_t nodes)
{
  return make_power_measure(gamma_exponent(params), delta_min, nodes);
}

double besov_seminorm(const SampledPath& f, const BesovParams& params, const WeightedMeasure& delta_measure,
                      std::size_t h_nodes, BesovKind kind)
{
  check_h_nodes(h_nodes);
  check_measure_exponent(delta_measure, -1.0 - params.alpha * params.s.value(), "Besov delta");
  const auto t = lebesgue_on(f.grid());
  const auto deltas = delta_measure.nodes();
  const detail::AbsPower sw(params.s.value());
  std::vector<double> integrand(deltas.size());
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    const double mod = kind == BesovKind::ordinary
                           ? modulus_sup(f.values(), t.weights(), deltas[k], params.p, h_nodes)
                           : modulus_avg(f.values(), t.weights(), deltas[k], params.p, params.q, h_nodes);
    integrand[k] = sw(mod);
  }
  return sw.root(integrate(integrand, delta_measure));
}

double besov_norm(const SampledPath& f, const BesovParams& params, const WeightedMeasure& delta_measure,
                  std::size_t h_nodes, BesovKind kind)
{
  return lp_norm(f, params.p, lebesgue_on(f.grid())) + besov_seminorm(f, params, delta_measure, h_nodes, kind);
}

SampledField increment_field(const SampledPath& f, std::size_t z_nodes, const WeightedMeasure& delta_measure)
{
  if (z_nodes < 2)
    throw std::invalid_argument("z-grid needs at least 2 nodes");
  const auto v = f.values();
  const std::size_t n = v.size();
  const auto z = make_lebesgue_measure(-1.0, 1.0, z_nodes);
  const auto deltas = delta_measure.nodes();
  const std::size_t nd = deltas.size();
  std::vector<double> values(n * z_nodes * nd);
  for (std::size_t j = 0; j < z_nodes; ++j) {
    for (std::size_t k = 0; k < nd; ++k) {
      const detail::ShiftPlan plan(z.nodes()[j] * deltas[k], n);
      for (std::size_t i = 0; i < n; ++i)
        values[(i * z_nodes + j) * nd + k] = plan.value(v, i) - v[i];
    }
  }
  return SampledField({n, z_nodes, nd}, std::move(values),
                      {AxisWeights::from_measure(lebesgue_on(f.grid())), AxisWeights::from_measure(z),
                       AxisWeights::from_measure(delta_measure)});
}

double seminorm_via_mixed(const SampledPath& f, const BesovParams& params, std::size_t z_nodes,
                          const WeightedMeasure& nu)
{
  if (params.p.is_infinite() || params.q.is_infinite())
    throw Unsupported("mixed-norm representation requires finite p, q and s");
  check_measure_exponent(nu, gamma_exponent(params), "nu");
  const auto field = increment_field(f, z_nodes, nu);
  return mixed_norm(field, {params.p, params.q, params.s});
}

}  // namespace besovlab
