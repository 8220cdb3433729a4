#include "besovlab/clt_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "besovlab/detail/powers.hpp"
#include "besovlab/detail/shift.hpp"
#include "besovlab/entropy.hpp"
#include "besovlab/errors.hpp"
#include "besovlab/grand_lebesgue.hpp"

namespace besovlab {

double rosenthal_bound(double p, bool symmetric)
{
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("rosenthal_bound needs a finite p > 1");
  const double c = symmetric ? kRosenthalSymmetricConstant : kRosenthalConstant;
  return c * p / (std::exp(1.0) * std::log(p));
}

double osekowski_bound(double p)
{
  if (!(p >= 2.0) || !std::isfinite(p))
    throw std::invalid_argument("osekowski_bound needs a finite p >= 2");
  return kOsekowskiConstant * p / std::log(p);
}

double nachapetyan_bound(double p, std::span<const double> mixing, double C)
{
  if (mixing.empty())
    throw std::invalid_argument("mixing sequence is empty");
  if (!(p >= 2.0) || !std::isfinite(p))
    throw std::invalid_argument("nachapetyan_bound needs a finite p >= 2");
  if (!(C > 0.0))
    throw std::invalid_argument("nachapetyan_bound needs C > 0");
  double bracket = 0.0;
  for (std::size_t i = 0; i < mixing.size(); ++i) {
    if (!(mixing[i] >= 0.0))
      throw std::invalid_argument("mixing coefficients must be nonnegative");
    const double k = static_cast<double>(i + 1);
    bracket += mixing[i] * std::pow(k + 1.0, 0.5 * (p - 2.0));
  }
  return std::pow(C, p) * std::pow(p, p) * std::pow(bracket, 1.0 / p);
}

Ensemble build_sn(const Ensemble& paths, std::size_t n, std::size_t replicas)
{
  if (n == 0 || replicas == 0)
    throw std::invalid_argument("build_sn needs n >= 1 and at least one replica");
  if (paths.replicas() < n * replicas)
    throw std::invalid_argument("build_sn needs " + std::to_string(n * replicas) + " paths, got " +
                                std::to_string(paths.replicas()));
  const std::size_t len = paths.grid().size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> values(replicas * len, 0.0);
  for (std::size_t r = 0; r < replicas; ++r) {
    double* out = values.data() + r * len;
    for (std::size_t j = 0; j < n; ++j) {
      const auto row = paths.row(r * n + j);
      for (std::size_t i = 0; i < len; ++i)
        out[i] += row[i];
    }
    for (std::size_t i = 0; i < len; ++i)
      out[i] *= scale;
  }
  Ensemble e(paths.grid(), replicas, std::move(values));
  e.jitter = paths.jitter;
  return e;
}

Ensemble build_sn(const Ensemble& paths, std::size_t n)
{
  if (n == 0)
    throw std::invalid_argument("build_sn needs n >= 1");
  return build_sn(paths, n, paths.replicas() / n);
}

Ensemble sample_normalized_sums(const ProcessModel& model, const UnitGrid& grid, std::size_t n,
                                std::size_t replicas, std::uint64_t seed)
{
  if (n == 0 || replicas == 0)
    throw std::invalid_argument("normalized sums need n >= 1 and at least one replica");
  const std::size_t len = grid.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Ensemble e(grid, replicas, std::vector<double>(replicas * len, 0.0));
  double jitter = 0.0;
  const auto R = static_cast<std::ptrdiff_t>(replicas);
#pragma omp parallel for schedule(static) reduction(max : jitter)
  for (std::ptrdiff_t r = 0; r < R; ++r) {
    std::vector<double> buf(len);
    auto out = e.row(static_cast<std::size_t>(r));
    for (std::size_t j = 0; j < n; ++j) {
      jitter = std::max(jitter, sample_path_into(model, grid, seed, static_cast<std::uint64_t>(r) * n + j, buf));
      for (std::size_t i = 0; i < len; ++i)
        out[i] += buf[i];
    }
    for (std::size_t i = 0; i < len; ++i)
      out[i] *= scale;
  }
  e.jitter = jitter;
  return e;
}

namespace {

std::vector<double> unit_nodes(std::size_t n) { return UnitGrid(n).nodes(); }

std::vector<AxisWeights> field_axes(std::size_t t_nodes, std::size_t z_nodes, const WeightedMeasure& nu)
{
  return {AxisWeights::from_measure(lebesgue_on(UnitGrid(t_nodes))),
          AxisWeights::from_measure(make_lebesgue_measure(-1.0, 1.0, z_nodes)), AxisWeights::from_measure(nu)};
}

}  // namespace

SampledField distance_field(const ProcessModel& model, double m, std::size_t t_nodes, std::size_t z_nodes,
                            const WeightedMeasure& nu, DistanceConvention convention)
{
  if (!model.is_gaussian())
    throw Unsupported("analytic distance field needs a Gaussian model, got " + model.name());
  const auto t = unit_nodes(t_nodes);
  const auto z = z_grid(z_nodes);
  const auto d = nu.nodes();
  const std::size_t nd = d.size();
  std::vector<double> values(t_nodes * z_nodes * nd);
  for (std::size_t i = 0; i < t_nodes; ++i) {
    for (std::size_t j = 0; j < z_nodes; ++j) {
      for (std::size_t k = 0; k < nd; ++k) {
        const double h = z[j] * d[k];
        double v;
        if (convention == DistanceConvention::zero_extension)
          v = pisier_distance_extended(model, t[i] + h, t[i], m);
        else
          v = pisier_distance(model, 0.0, std::min(std::abs(h), 1.0), m);
        values[(i * z_nodes + j) * nd + k] = v;
      }
    }
  }
  return SampledField({t_nodes, z_nodes, nd}, std::move(values), field_axes(t_nodes, z_nodes, nu));
}

SampledField empirical_distance_field(const Ensemble& paths, double m, std::size_t z_nodes, const WeightedMeasure& nu)
{
  if (!(m >= 1.0))
    throw std::invalid_argument("moment order m must be >= 1");
  const std::size_t n = paths.grid().size();
  const std::size_t R = paths.replicas();
  const auto z = z_grid(z_nodes);
  const auto d = nu.nodes();
  const std::size_t nd = d.size();
  const detail::AbsPower pw(m);
  std::vector<double> values(n * z_nodes * nd);
  const auto JK = static_cast<std::ptrdiff_t>(z_nodes * nd);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t jk = 0; jk < JK; ++jk) {
    const std::size_t j = static_cast<std::size_t>(jk) / nd;
    const std::size_t k = static_cast<std::size_t>(jk) % nd;
    const detail::ShiftPlan plan(z[j] * d[k], n);
    std::vector<double> acc(n, 0.0);
    for (std::size_t r = 0; r < R; ++r) {
      const auto row = paths.row(r);
      for (std::size_t i = 0; i < n; ++i)
        acc[i] += pw(plan.value(row, i) - row[i]);
    }
    for (std::size_t i = 0; i < n; ++i)
      values[(i * z_nodes + j) * nd + k] = pw.root(acc[i] / static_cast<double>(R));
  }
  return SampledField({n, z_nodes, nd}, std::move(values), field_axes(n, z_nodes, nu));
}

SampledField power_law_field(double C, double beta, std::size_t t_nodes, std::size_t z_nodes,
                             const WeightedMeasure& nu)
{
  if (!(C >= 0.0) || !(beta > 0.0))
    throw std::invalid_argument("power-law field needs C >= 0 and beta > 0");
  const auto z = z_grid(z_nodes);
  const auto d = nu.nodes();
  const std::size_t nd = d.size();
  std::vector<double> values(t_nodes * z_nodes * nd);
  for (std::size_t i = 0; i < t_nodes; ++i)
    for (std::size_t j = 0; j < z_nodes; ++j)
      for (std::size_t k = 0; k < nd; ++k)
        values[(i * z_nodes + j) * nd + k] = C * std::pow(std::abs(z[j]) * d[k], beta);
  return SampledField({t_nodes, z_nodes, nd}, std::move(values), field_axes(t_nodes, z_nodes, nu));
}

double kappa(double m, const BesovParams& params, const SampledField& distance)
{
  if (params.p.is_infinite() || params.q.is_infinite() || params.s.is_infinite())
    throw std::invalid_argument("kappa needs finite p, q, s");
  const double floor = std::max({2.0, params.p.value(), params.q.value(), params.s.value()});
  if (!(m >= floor))
    throw std::invalid_argument("kappa needs m >= max(2, p, q, s) = " + std::to_string(floor) + ", got " +
                                std::to_string(m));
  if (distance.rank() != 3)
    throw std::invalid_argument("distance field must have axes (t, z, delta)");
  return rosenthal_bound(m) * mixed_norm(distance, {params.p, params.q, params.s});
}

FinitenessCheck kappa_finiteness(double beta, const BesovParams& params)
{
  if (params.q.is_infinite() || params.s.is_infinite())
    throw std::invalid_argument("finiteness check needs finite q and s");
  const double e = gamma_exponent(params) + beta * params.s.value();
  return {e, e > -1.0};
}

double power_law_mixed_norm(double beta, const BesovParams& params)
{
  const auto check = kappa_finiteness(beta, params);
  if (!check.finite)
    return std::numeric_limits<double>::infinity();
  const double q = params.q.value();
  const double s = params.s.value();
  return std::pow(2.0 / (beta * q + 1.0), 1.0 / q) * std::pow(s * (beta - params.alpha + 1.0 / q), -1.0 / s);
}

double remark_envelope(double beta, const BesovParams& params)
{
  const double q = params.q.value();
  const double s = params.s.value();
  const double gap = beta - params.alpha + 1.0 / q;
  if (!(gap > 0.0))
    return std::numeric_limits<double>::infinity();
  return std::pow(s, -1.0 / s) * std::pow(gap, -1.0 / s);
}

double ks_two_sample(std::span<const double> a, std::span<const double> b)
{
  if (a.empty() || b.empty())
    throw std::invalid_argument("KS statistic needs two nonempty samples");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size());
  const double nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v)
      ++i;
    while (j < y.size() && y[j] == v)
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double dkw_two_sample_envelope(std::size_t n_a, std::size_t n_b, double level)
{
  if (n_a == 0 || n_b == 0 || !(level > 0.0 && level < 1.0))
    throw std::invalid_argument("DKW envelope needs nonempty samples and a level in (0, 1)");
  return std::sqrt(std::log(2.0 / level) / 2.0) *
         std::sqrt(1.0 / static_cast<double>(n_a) + 1.0 / static_cast<double>(n_b));
}

double CltConfig::resolved_delta_min() const
{
  return delta_min > 0.0 ? delta_min : 1.0 / static_cast<double>(grid_n);
}

void CltConfig::validate() const
{
  if (grid_n < 2)
    throw std::invalid_argument("grid_n must be at least 2");
  if (model.kind == ModelKind::fbm && grid_n > kMaxFbmNodes)
    throw std::invalid_argument("fbm grids are limited to " + std::to_string(kMaxFbmNodes) + " nodes");
  if (replicas < 2)
    throw std::invalid_argument("replicas must be at least 2");
  if (n_list.empty() || m_list.empty())
    throw std::invalid_argument("n_list and m_list must be nonempty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] == 0 || (i > 0 && n_list[i] <= n_list[i - 1]))
      throw std::invalid_argument("n_list must be strictly increasing positive integers");
  }
  if (besov.p.is_infinite() || besov.q.is_infinite())
    throw std::invalid_argument("the CLT experiment needs finite p and q");
  const double floor = std::max({2.0, besov.p.value(), besov.q.value(), besov.s.value()});
  for (double m : m_list) {
    if (!(m >= floor) || !std::isfinite(m))
      throw std::invalid_argument("every m must satisfy m >= max(2, p, q, s) = " + std::to_string(floor));
  }
  for (std::size_t i = 0; i < u_list.size(); ++i) {
    if (!(u_list[i] > 0.0) || (i > 0 && u_list[i] <= u_list[i - 1]))
      throw std::invalid_argument("u_list must be strictly increasing positive reals");
  }
  const double dmin = resolved_delta_min();
  if (!(dmin > 0.0 && dmin < 1.0))
    throw std::invalid_argument("delta_min must lie in (0, 1)");
  if (delta_nodes < 2 || h_nodes < 2 || z_nodes < 2)
    throw std::invalid_argument("delta_nodes, h_nodes and z_nodes must be at least 2");
  if (entropy_z_nodes == 1)
    throw std::invalid_argument("entropy_z_nodes must be 0 (skip) or at least 2");
  if (!(kappa_scale > 0.0))
    throw std::invalid_argument("kappa_scale must be positive");
  if (reference && reference_replicas < 2)
    throw std::invalid_argument("reference_replicas must be at least 2");
  const std::size_t total = replicas * std::accumulate(n_list.begin(), n_list.end(), std::size_t{0});
  if (total > budget)
    throw BudgetExceeded("experiment needs " + std::to_string(total) + " paths (replicas x sum of n_list), budget is " +
                         std::to_string(budget));
}

void besov_norms(const Ensemble& paths, const BesovParams& params, const WeightedMeasure& delta_measure,
                 std::size_t h_nodes, BesovKind kind, std::vector<double>& seminorms, std::vector<double>& norms)
{
  const std::size_t R = paths.replicas();
  seminorms.assign(R, 0.0);
  norms.assign(R, 0.0);
  const auto leb = lebesgue_on(paths.grid());
  const auto RR = static_cast<std::ptrdiff_t>(R);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < RR; ++r) {
    const auto path = paths.path(static_cast<std::size_t>(r));
    const double semi = besov_seminorm(path, params, delta_measure, h_nodes, kind);
    seminorms[static_cast<std::size_t>(r)] = semi;
    norms[static_cast<std::size_t>(r)] = lp_norm(path, params.p, leb) + semi;
  }
}

namespace {

const std::vector<double> kQuantileLevels{0.05, 0.25, 0.5, 0.75, 0.95};

double quantile(std::vector<double> sorted, double level)
{
  const double pos = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return (1.0 - w) * sorted[lo] + w * sorted[hi];
}

NormSummary summarize(std::size_t n, std::vector<double> semi, std::vector<double> norms)
{
  NormSummary s;
  s.n = n;
  for (double x : semi)
    s.all_finite = s.all_finite && std::isfinite(x);
  std::vector<double> sorted(semi);
  std::sort(sorted.begin(), sorted.end());
  s.quantile_levels = kQuantileLevels;
  for (double l : kQuantileLevels)
    s.quantiles.push_back(quantile(sorted, l));
  s.mean = std::accumulate(semi.begin(), semi.end(), 0.0) / static_cast<double>(semi.size());
  s.seminorms = std::move(semi);
  s.norms = std::move(norms);
  return s;
}

// (mean x^m)^{1/m} and its delta-method relative standard error.
std::pair<double, double> moment_with_se(std::span<const double> x, double m)
{
  const detail::AbsPower pw(m);
  const double R = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x)
    mean += pw(v);
  mean /= R;
  double var = 0.0;
  for (double v : x) {
    const double d = pw(v) - mean;
    var += d * d;
  }
  var /= (R - 1.0);
  const double se_mean = std::sqrt(var / R);
  const double se_rel = mean > 0.0 ? se_mean / (m * mean) : 0.0;
  return {pw.root(mean), se_rel};
}

}  // namespace

CltReport run_clt_experiment(const CltConfig& cfg)
{
  cfg.validate();
  CltReport rep;
  rep.config = cfg;
  rep.delta_min = cfg.resolved_delta_min();
  const UnitGrid grid(cfg.grid_n);
  const auto delta_measure = besov_delta_measure(cfg.besov, rep.delta_min, cfg.delta_nodes);
  const auto nu = nu_measure(cfg.besov, rep.delta_min, cfg.delta_nodes);

  // Theoretical side: kappa from the distance field of one summand.
  std::optional<Ensemble> base;
  auto base_paths = [&]() -> const Ensemble& {
    if (!base)
      base = sample(cfg.model, {grid, cfg.replicas, cfg.seed ^ 0x9e3779b97f4a7c15ULL});
    return *base;
  };
  for (double m : cfg.m_list) {
    const SampledField field = cfg.model.is_gaussian()
                                   ? distance_field(cfg.model, m, cfg.grid_n, cfg.z_nodes, nu)
                                   : empirical_distance_field(base_paths(), m, cfg.z_nodes, nu);
    rep.kappa.push_back(cfg.kappa_scale * kappa(m, cfg.besov, field));
  }
  if (cfg.entropy_z_nodes >= 2) {
    const ThetaTable table(base_paths(), cfg.besov.p, z_grid(cfg.entropy_z_nodes),
                           std::vector<double>(nu.nodes().begin(), nu.nodes().end()));
    for (double m : cfg.m_list) {
      const FiniteMetricSpace space(z_grid(cfg.entropy_z_nodes), table.rho_matrix(Exponent(m)));
      const double V = entropy_integral(space, Exponent(m), cfg.entropy_eps_nodes);
      rep.entropy_V.push_back(V);
      rep.beta_tilde.push_back(rosenthal_bound(m) * beta_of_m(V, table.mu_curve(Exponent(m)), cfg.besov.s, nu));
    }
  }

  std::vector<MomentPoint> kappa_table;
  for (std::size_t a = 0; a < cfg.m_list.size(); ++a)
    kappa_table.push_back({cfg.m_list[a], rep.kappa[a]});
  const PsiFunction kappa_psi = PsiFunction::tabulated(kappa_table);

  // Empirical side.
  rep.sup_tail.assign(cfg.u_list.size(), 0.0);
  for (std::size_t n : cfg.n_list) {
    const Ensemble sn = sample_normalized_sums(cfg.model, grid, n, cfg.replicas, cfg.seed);
    std::vector<double> semi, norms;
    besov_norms(sn, cfg.besov, delta_measure, cfg.h_nodes, cfg.kind, semi, norms);

    for (std::size_t a = 0; a < cfg.m_list.size(); ++a) {
      const auto [moment, se_rel] = moment_with_se(semi, cfg.m_list[a]);
      MomentRow row{n, cfg.m_list[a], moment, se_rel, rep.kappa[a],
                    rep.beta_tilde.empty() ? std::numeric_limits<double>::quiet_NaN() : rep.beta_tilde[a], true};
      row.pass = std::isfinite(moment) && moment <= row.kappa * (1.0 + 3.0 * se_rel);
      rep.moments_pass = rep.moments_pass && row.pass;
      rep.moments.push_back(row);
    }

    const double R = static_cast<double>(semi.size());
    for (std::size_t b = 0; b < cfg.u_list.size(); ++b) {
      const double u = cfg.u_list[b];
      const double count = static_cast<double>(std::count_if(semi.begin(), semi.end(), [&](double x) { return x > u; }));
      const double pe = count / R;
      TailRow row{n, u, pe, std::sqrt(pe * (1.0 - pe) / R), std::numeric_limits<double>::quiet_NaN(),
                  u > std::exp(1.0), true};
      if (row.in_theorem) {
        row.bound = tail_bound(kappa_psi, u);
        row.pass = pe <= std::min(1.0, row.bound) + 3.0 * row.se;
        rep.tails_pass = rep.tails_pass && row.pass;
      }
      rep.sup_tail[b] = std::max(rep.sup_tail[b], pe);
      rep.tails.push_back(row);
    }
    rep.per_n.push_back(summarize(n, std::move(semi), std::move(norms)));
  }

  for (std::size_t i = 1; i < rep.per_n.size(); ++i) {
    const auto& a = rep.per_n[i - 1];
    const auto& b = rep.per_n[i];
    rep.ks_consecutive.push_back({a.n, b.n, ks_two_sample(a.seminorms, b.seminorms),
                                  dkw_two_sample_envelope(a.seminorms.size(), b.seminorms.size())});
  }

  if (cfg.reference) {
    const Ensemble ref = sample(*cfg.reference, {grid, cfg.reference_replicas, cfg.seed ^ 0xd1b54a32d192ed03ULL});
    std::vector<double> semi, norms;
    besov_norms(ref, cfg.besov, delta_measure, cfg.h_nodes, cfg.kind, semi, norms);
    for (const auto& s : rep.per_n)
      rep.ks_reference.push_back(
          {0, s.n, ks_two_sample(semi, s.seminorms), dkw_two_sample_envelope(semi.size(), s.seminorms.size())});
  }
  return rep;
}

}  // namespace besovlab
