#include "besovlab/process_models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "besovlab/detail/powers.hpp"
#include "besovlab/detail/shift.hpp"
#include "besovlab/errors.hpp"

namespace besovlab {

ProcessModel ProcessModel::wiener(double sigma) { return {ModelKind::wiener, 0.5, sigma}; }

ProcessModel ProcessModel::fbm(double hurst, double sigma)
{
  if (!(hurst > 0.0 && hurst < 1.0))
    throw std::invalid_argument("fbm hurst index must lie in (0, 1)");
  return {ModelKind::fbm, hurst, sigma};
}

ProcessModel ProcessModel::iid_gaussian_field(double sigma) { return {ModelKind::iid_gaussian_field, 0.5, sigma}; }

ProcessModel ProcessModel::rademacher_walk(double sigma) { return {ModelKind::rademacher_walk, 0.5, sigma}; }

std::string ProcessModel::name() const
{
  switch (kind) {
  case ModelKind::wiener: return "wiener";
  case ModelKind::fbm: return "fbm";
  case ModelKind::iid_gaussian_field: return "iid_gaussian_field";
  case ModelKind::rademacher_walk: return "rademacher_walk";
  }
  return "unknown";
}

ProcessModel parse_model(const std::string& name, double hurst, double sigma)
{
  if (!(sigma > 0.0))
    throw std::invalid_argument("model scale sigma must be positive");
  if (name == "wiener")
    return ProcessModel::wiener(sigma);
  if (name == "fbm")
    return ProcessModel::fbm(hurst, sigma);
  if (name == "iid_gaussian_field" || name == "iid")
    return ProcessModel::iid_gaussian_field(sigma);
  if (name == "rademacher_walk" || name == "rademacher")
    return ProcessModel::rademacher_walk(sigma);
  throw std::invalid_argument("unknown process model '" + name + "'");
}

Ensemble::Ensemble(UnitGrid grid, std::size_t replicas, std::vector<double> values)
    : grid_(grid), replicas_(replicas), values_(std::move(values))
{
  if (replicas_ == 0)
    throw std::invalid_argument("ensemble needs at least one replica");
  if (values_.size() != replicas_ * grid_.size())
    throw std::invalid_argument("ensemble values do not match replicas x grid size");
}

std::span<const double> Ensemble::row(std::size_t r) const
{
  return std::span<const double>(values_).subspan(r * grid_.size(), grid_.size());
}

std::span<double> Ensemble::row(std::size_t r)
{
  return std::span<double>(values_).subspan(r * grid_.size(), grid_.size());
}

SampledPath Ensemble::path(std::size_t r) const
{
  const auto v = row(r);
  return SampledPath(grid_, {v.begin(), v.end()});
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 replica_engine(std::uint64_t seed, std::uint64_t index)
{
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

struct FbmFactor
{
  Eigen::MatrixXd lower;  // covariance factor at nodes 1..n-1
  double jitter = 0.0;
};

std::shared_ptr<const FbmFactor> fbm_factor(std::size_t n, double hurst)
{
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, double>, std::shared_ptr<const FbmFactor>> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_pair(n, hurst);
  if (auto it = cache.find(key); it != cache.end())
    return it->second;

  const std::size_t m = n - 1;
  const double dt = 1.0 / static_cast<double>(n - 1);
  const double h2 = 2.0 * hurst;
  Eigen::MatrixXd cov(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const double ti = static_cast<double>(i + 1) * dt;
    for (std::size_t j = 0; j <= i; ++j) {
      const double tj = static_cast<double>(j + 1) * dt;
      const double c = 0.5 * (std::pow(ti, h2) + std::pow(tj, h2) - std::pow(ti - tj, h2));
      cov(i, j) = c;
      cov(j, i) = c;
    }
  }
  const double mean_diag = cov.diagonal().mean();
  auto factor = std::make_shared<FbmFactor>();
  // Retry policy: jitter 1e-12 * mean diagonal, growing tenfold, six attempts.
  for (int attempt = -1; attempt < 6; ++attempt) {
    const double jitter = attempt < 0 ? 0.0 : 1e-12 * mean_diag * std::pow(10.0, attempt);
    Eigen::MatrixXd a = cov;
    a.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) {
      factor->lower = llt.matrixL();
      factor->jitter = jitter;
      cache.emplace(key, factor);
      return factor;
    }
  }
  throw NumericError("fbm covariance factorization failed after jitter retries up to 1e-6 * mean diagonal");
}

}  // namespace

double sample_path_into(const ProcessModel& model, const UnitGrid& grid, std::uint64_t seed,
                        std::uint64_t index, std::span<double> out)
{
  const std::size_t n = grid.size();
  if (out.size() != n)
    throw std::invalid_argument("output row does not match the grid");
  auto engine = replica_engine(seed, index);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double sd = model.sigma * std::sqrt(grid.step());
  out[0] = 0.0;
  switch (model.kind) {
  case ModelKind::wiener:
    for (std::size_t i = 1; i < n; ++i)
      out[i] = out[i - 1] + sd * normal(engine);
    return 0.0;
  case ModelKind::rademacher_walk:
    for (std::size_t i = 1; i < n; ++i)
      out[i] = out[i - 1] + ((engine() >> 63) ? sd : -sd);
    return 0.0;
  case ModelKind::iid_gaussian_field:
    for (std::size_t i = 1; i < n; ++i)
      out[i] = model.sigma * normal(engine);
    return 0.0;
  case ModelKind::fbm: {
    if (n > kMaxFbmNodes)
      throw std::invalid_argument("fbm sampling supports at most 4096 grid nodes");
    const auto f = fbm_factor(n, model.hurst);
    Eigen::VectorXd z(n - 1);
    for (Eigen::Index i = 0; i < z.size(); ++i)
      z(i) = normal(engine);
    const Eigen::VectorXd x = f->lower.triangularView<Eigen::Lower>() * z;
    for (std::size_t i = 1; i < n; ++i)
      out[i] = model.sigma * x(static_cast<Eigen::Index>(i - 1));
    return f->jitter;
  }
  }
  return 0.0;
}

Ensemble sample(const ProcessModel& model, const SamplerConfig& cfg)
{
  if (cfg.replicas == 0)
    throw std::invalid_argument("sampler needs at least one replica");
  if (model.kind == ModelKind::fbm) {
    if (cfg.grid.size() > kMaxFbmNodes)
      throw std::invalid_argument("fbm sampling supports at most 4096 grid nodes");
    fbm_factor(cfg.grid.size(), model.hurst);
  }
  Ensemble e(cfg.grid, cfg.replicas, std::vector<double>(cfg.replicas * cfg.grid.size()));
  double jitter = 0.0;
#pragma omp parallel for schedule(static) reduction(max : jitter)
  for (std::size_t r = 0; r < cfg.replicas; ++r)
    jitter = std::max(jitter, sample_path_into(model, cfg.grid, cfg.seed, r, e.row(r)));
  e.jitter = jitter;
  return e;
}

double gaussian_abs_moment(double m)
{
  if (!(m > 0.0))
    throw std::invalid_argument("moment order must be positive");
  // E|Z|^m = 2^{m/2} Gamma((m+1)/2) / sqrt(pi)
  const double log_moment = 0.5 * m * std::log(2.0) + std::lgamma(0.5 * (m + 1.0)) - 0.5 * std::log(M_PI);
  return std::exp(log_moment / m);
}

namespace {

// Standard deviation of xi(t) - xi(u), t, u in [0,1].
double increment_sd(const ProcessModel& model, double t, double u)
{
  if (t == u)
    return 0.0;
  switch (model.kind) {
  case ModelKind::wiener: return model.sigma * std::sqrt(std::abs(t - u));
  case ModelKind::fbm: return model.sigma * std::pow(std::abs(t - u), model.hurst);
  case ModelKind::iid_gaussian_field:
    return model.sigma * ((t == 0.0 || u == 0.0) ? 1.0 : std::sqrt(2.0));
  case ModelKind::rademacher_walk: break;
  }
  throw Unsupported("analytic Pisier distance needs a Gaussian model, got " + model.name());
}

double value_sd(const ProcessModel& model, double t) { return increment_sd(model, t, 0.0); }

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

double pisier_distance(const ProcessModel& model, double t, double u, double m)
{
  if (!in_unit(t) || !in_unit(u))
    throw std::invalid_argument("pisier_distance needs t, u in [0, 1]");
  if (!(m >= 1.0))
    throw std::invalid_argument("moment order m must be >= 1");
  if (!model.is_gaussian())
    throw Unsupported("analytic Pisier distance needs a Gaussian model, got " + model.name());
  return gaussian_abs_moment(m) * increment_sd(model, t, u);
}

double pisier_distance_extended(const ProcessModel& model, double t, double u, double m)
{
  if (!(m >= 1.0))
    throw std::invalid_argument("moment order m must be >= 1");
  if (!model.is_gaussian())
    throw Unsupported("analytic Pisier distance needs a Gaussian model, got " + model.name());
  const bool ti = in_unit(t);
  const bool ui = in_unit(u);
  if (ti && ui)
    return gaussian_abs_moment(m) * increment_sd(model, t, u);
  if (ti)
    return gaussian_abs_moment(m) * value_sd(model, t);
  if (ui)
    return gaussian_abs_moment(m) * value_sd(model, u);
  return 0.0;
}

double pisier_distance_empirical(const Ensemble& paths, double t, double u, double m)
{
  if (!(m >= 1.0))
    throw std::invalid_argument("moment order m must be >= 1");
  const detail::AbsPower pw(m);
  double sum = 0.0;
  for (std::size_t r = 0; r < paths.replicas(); ++r) {
    const SampledPath p = paths.path(r);
    sum += pw(p(t) - p(u));
  }
  return pw.root(sum / static_cast<double>(paths.replicas()));
}

SigmaM sigma_m(const ProcessModel& model, double h, double m, std::size_t t_nodes)
{
  if (!(std::abs(h) <= 1.0))
    throw std::invalid_argument("sigma_m needs |h| <= 1");
  if (t_nodes < 2)
    throw std::invalid_argument("sigma_m needs at least 2 t-nodes");
  SigmaM out{0.0, 0.0};
  for (std::size_t i = 0; i < t_nodes; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(t_nodes - 1);
    const double d = pisier_distance_extended(model, t + h, t, m);
    out.with_boundary = std::max(out.with_boundary, d);
    if (in_unit(t + h))
      out.interior = std::max(out.interior, d);
  }
  return out;
}

std::vector<double> z_grid(std::size_t z_nodes)
{
  if (z_nodes < 2)
    throw std::invalid_argument("z-grid needs at least 2 nodes");
  std::vector<double> z(z_nodes);
  for (std::size_t j = 0; j < z_nodes; ++j)
    z[j] = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(z_nodes - 1);
  z.back() = 1.0;
  return z;
}

ThetaTable::ThetaTable(const Ensemble& paths, Exponent p, std::vector<double> z_nodes, std::vector<double> deltas,
                       BoundaryConvention convention)
    : replicas_(paths.replicas()), z_(std::move(z_nodes)), deltas_(std::move(deltas))
{
  if (z_.empty() || deltas_.empty())
    throw std::invalid_argument("theta table needs z-nodes and deltas");
  for (double d : deltas_) {
    if (!(d >= 0.0 && d <= 1.0))
      throw std::invalid_argument("deltas must lie in [0, 1]");
  }
  for (double z : z_) {
    if (!(std::abs(z) <= 1.0))
      throw std::invalid_argument("z-nodes must lie in [-1, 1]");
  }
  table_.assign(replicas_ * z_.size() * deltas_.size(), 0.0);
  const auto tw = lebesgue_on(paths.grid());
  const bool interior = convention == BoundaryConvention::interior_only;
  const std::size_t nz = z_.size();
  const std::size_t nd = deltas_.size();
#pragma omp parallel for schedule(dynamic)
  for (std::size_t r = 0; r < replicas_; ++r) {
    const auto f = paths.row(r);
    for (std::size_t j = 0; j < nz; ++j) {
      for (std::size_t k = 0; k < nd; ++k) {
        const double h = z_[j] * deltas_[k];
        double v = 0.0;
        if (p.is_infinite()) {
          v = detail::shifted_max(f, h, interior);
        } else {
          const detail::AbsPower pw(p.value());
          v = pw.root(detail::shifted_power_sum(f, tw.weights(), h, pw, interior));
        }
        table_[(r * nz + j) * nd + k] = v;
      }
    }
  }
}

namespace {

double omega_norm(std::span<const double> x, Exponent m)
{
  if (m.is_infinite()) {
    double mx = 0.0;
    for (double v : x)
      mx = std::max(mx, std::abs(v));
    return mx;
  }
  const detail::AbsPower pw(m.value());
  double sum = 0.0;
  for (double v : x)
    sum += pw(v);
  return pw.root(sum / static_cast<double>(x.size()));
}

}  // namespace

double ThetaTable::mu(Exponent m, std::size_t k) const
{
  std::vector<double> col(replicas_);
  double best = 0.0;
  for (std::size_t j = 0; j < z_.size(); ++j) {
    for (std::size_t r = 0; r < replicas_; ++r)
      col[r] = theta(r, j, k);
    best = std::max(best, omega_norm(col, m));
  }
  return best;
}

std::vector<double> ThetaTable::mu_curve(Exponent m) const
{
  std::vector<double> out(deltas_.size());
  for (std::size_t k = 0; k < deltas_.size(); ++k)
    out[k] = mu(m, k);
  return out;
}

double ThetaTable::rho(Exponent m, std::size_t a, std::size_t b) const
{
  const auto mus = mu_curve(m);
  std::vector<double> diff(replicas_);
  double best = 0.0;
  for (std::size_t k = 0; k < deltas_.size(); ++k) {
    if (!(mus[k] > 0.0))
      throw UndefinedDistance("mu_m vanishes at delta = " + std::to_string(deltas_[k]));
    for (std::size_t r = 0; r < replicas_; ++r)
      diff[r] = theta(r, a, k) - theta(r, b, k);
    best = std::max(best, omega_norm(diff, m) / mus[k]);
  }
  return best;
}

std::vector<double> ThetaTable::rho_matrix(Exponent m) const
{
  const auto mus = mu_curve(m);
  for (std::size_t k = 0; k < deltas_.size(); ++k) {
    if (!(mus[k] > 0.0))
      throw UndefinedDistance("mu_m vanishes at delta = " + std::to_string(deltas_[k]));
  }
  const std::size_t nz = z_.size();
  std::vector<double> d(nz * nz, 0.0);
  std::vector<double> diff(replicas_);
  for (std::size_t a = 0; a < nz; ++a) {
    for (std::size_t b = a + 1; b < nz; ++b) {
      double best = 0.0;
      for (std::size_t k = 0; k < deltas_.size(); ++k) {
        for (std::size_t r = 0; r < replicas_; ++r)
          diff[r] = theta(r, a, k) - theta(r, b, k);
        best = std::max(best, omega_norm(diff, m) / mus[k]);
      }
      d[a * nz + b] = best;
      d[b * nz + a] = best;
    }
  }
  return d;
}

double theta_norm_mu(const Ensemble& paths, double delta, Exponent m, Exponent p, std::size_t z_nodes,
                     BoundaryConvention convention)
{
  const ThetaTable table(paths, p, z_grid(z_nodes), {delta}, convention);
  return table.mu(m, 0);
}

double rho_distance(const Ensemble& paths, double z1, double z2, Exponent m, Exponent p,
                    const std::vector<double>& deltas, std::size_t z_nodes, BoundaryConvention convention)
{
  const ThetaTable grid_table(paths, p, z_grid(z_nodes), deltas, convention);
  const ThetaTable pair(paths, p, {z1, z2}, deltas, convention);
  const auto mus = grid_table.mu_curve(m);
  std::vector<double> diff(paths.replicas());
  double best = 0.0;
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (!(mus[k] > 0.0))
      throw UndefinedDistance("mu_m vanishes at delta = " + std::to_string(deltas[k]));
    for (std::size_t r = 0; r < paths.replicas(); ++r)
      diff[r] = pair.theta(r, 0, k) - pair.theta(r, 1, k);
    best = std::max(best, omega_norm(diff, m) / mus[k]);
  }
  return best;
}

double wiener_lambda(double delta, double m)
{
  if (!(delta > 0.0 && delta <= std::exp(-1.0) + 1e-15))
    throw std::invalid_argument("wiener_lambda needs 0 < delta <= 1/e");
  return std::sqrt(m) * std::sqrt(delta * std::abs(std::log(delta)));
}

}  // namespace besovlab
