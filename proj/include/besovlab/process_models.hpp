#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "besovlab/quadrature.hpp"

namespace besovlab {

enum class ModelKind {
  wiener,
  fbm,
  iid_gaussian_field,
  /// Scaled simple random walk: increments +-sigma*sqrt(dt). Centered and
  /// bounded; the designated non-Gaussian model for CLT experiments.
  rademacher_walk,
};

struct ProcessModel
{
  ModelKind kind = ModelKind::wiener;
  double hurst = 0.5;
  double sigma = 1.0;

  static ProcessModel wiener(double sigma = 1.0);
  static ProcessModel fbm(double hurst, double sigma = 1.0);
  static ProcessModel iid_gaussian_field(double sigma = 1.0);
  static ProcessModel rademacher_walk(double sigma = 1.0);

  bool is_gaussian() const { return kind != ModelKind::rademacher_walk; }
  std::string name() const;
};

ProcessModel parse_model(const std::string& name, double hurst = 0.5, double sigma = 1.0);

struct SamplerConfig
{
  UnitGrid grid;
  std::size_t replicas;
  std::uint64_t seed;
};

inline constexpr std::size_t kMaxFbmNodes = 4096;

/// R paths of a common grid stored replica-major.
class Ensemble
{
public:
  Ensemble(UnitGrid grid, std::size_t replicas, std::vector<double> values);

  const UnitGrid& grid() const { return grid_; }
  std::size_t replicas() const { return replicas_; }
  std::span<const double> row(std::size_t r) const;
  std::span<double> row(std::size_t r);
  SampledPath path(std::size_t r) const;
  std::span<const double> values() const { return values_; }

  /// Diagonal jitter that the fbm factorization needed (0 if none).
  double jitter = 0.0;

private:
  UnitGrid grid_;
  std::size_t replicas_;
  std::vector<double> values_;
};

/// Writes path number `index` of the stream keyed by `seed` into out.
/// Paths are independent across indices and do not depend on evaluation order.
/// Returns the fbm jitter used (0 otherwise).
double sample_path_into(const ProcessModel& model, const UnitGrid& grid, std::uint64_t seed,
                        std::uint64_t index, std::span<double> out);

/// Paths 0..R-1 of the stream keyed by cfg.seed.
Ensemble sample(const ProcessModel& model, const SamplerConfig& cfg);

/// (E|Z|^m)^{1/m} for a standard Gaussian Z.
double gaussian_abs_moment(double m);

/// Analytic (E|xi(t) - xi(u)|^m)^{1/m} for Gaussian models, t, u in [0, 1].
double pisier_distance(const ProcessModel& model, double t, double u, double m);

/// As pisier_distance but with xi := 0 outside [0, 1].
double pisier_distance_extended(const ProcessModel& model, double t, double u, double m);

/// Empirical m-th moment of |xi(t) - xi(u)| over the ensemble, to the power 1/m.
double pisier_distance_empirical(const Ensemble& paths, double t, double u, double m);

struct SigmaM
{
  double with_boundary;  ///< sup over t with zero extension beyond [0,1]
  double interior;       ///< sup over t with t + h in [0,1]
};

SigmaM sigma_m(const ProcessModel& model, double h, double m, std::size_t t_nodes = 1025);

enum class BoundaryConvention { zero_extension, interior_only };

/// theta(r, z, delta) = |xi_r(. + z delta) - xi_r(.)|_{p,T} over an ensemble,
/// tabulated on a z-grid of [-1,1] and a list of deltas.
class ThetaTable
{
public:
  ThetaTable(const Ensemble& paths, Exponent p, std::vector<double> z_nodes, std::vector<double> deltas,
             BoundaryConvention convention = BoundaryConvention::zero_extension);

  std::size_t replicas() const { return replicas_; }
  const std::vector<double>& z_nodes() const { return z_; }
  const std::vector<double>& deltas() const { return deltas_; }
  double theta(std::size_t r, std::size_t j, std::size_t k) const
  {
    return table_[(r * z_.size() + j) * deltas_.size() + k];
  }

  /// max_j |theta(., z_j, delta_k)|_{m,Omega}
  double mu(Exponent m, std::size_t k) const;
  std::vector<double> mu_curve(Exponent m) const;
  /// max_k |theta(., z_a, delta_k) - theta(., z_b, delta_k)|_{m,Omega} / mu(m, k)
  double rho(Exponent m, std::size_t a, std::size_t b) const;
  /// rho over all z-pairs, row-major.
  std::vector<double> rho_matrix(Exponent m) const;

private:
  std::size_t replicas_;
  std::vector<double> z_;
  std::vector<double> deltas_;
  std::vector<double> table_;
};

/// Uniform z-grid of [-1, 1].
std::vector<double> z_grid(std::size_t z_nodes);

/// mu_m(delta) estimated from the ensemble.
double theta_norm_mu(const Ensemble& paths, double delta, Exponent m, Exponent p, std::size_t z_nodes,
                     BoundaryConvention convention = BoundaryConvention::zero_extension);

/// rho_m(z1, z2) with the sup over the given deltas and mu_m on a z-grid.
double rho_distance(const Ensemble& paths, double z1, double z2, Exponent m, Exponent p,
                    const std::vector<double>& deltas, std::size_t z_nodes,
                    BoundaryConvention convention = BoundaryConvention::zero_extension);

/// sqrt(m) * sqrt(delta |ln delta|), 0 < delta <= 1/e.
double wiener_lambda(double delta, double m);

}  // namespace besovlab
