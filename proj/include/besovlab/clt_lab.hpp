#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "besovlab/besov.hpp"
#include "besovlab/process_models.hpp"

namespace besovlab {

inline constexpr double kRosenthalConstant = 1.77638;
inline constexpr double kRosenthalSymmetricConstant = 1.53572;
inline constexpr double kOsekowskiConstant = 15.7858;

/// C p / (e ln p), p > 1.
double rosenthal_bound(double p, bool symmetric = false);

/// 15.7858 p / ln p, p >= 2.
double osekowski_bound(double p);

/// C^p p^p [sum_k beta(k) (k+1)^{(p-2)/2}]^{1/p}; mixing[0] is beta(1).
double nachapetyan_bound(double p, std::span<const double> mixing, double C);

/// S_n^{(r)} = n^{-1/2} (xi_{rn} + ... + xi_{rn+n-1}) for r < replicas.
Ensemble build_sn(const Ensemble& paths, std::size_t n, std::size_t replicas);
/// As above with replicas = floor(paths / n).
Ensemble build_sn(const Ensemble& paths, std::size_t n);

/// Normalized sums generated on the fly; replica r uses base paths r*n .. r*n+n-1
/// of the stream keyed by seed, so the result equals
/// build_sn(sample(model, {grid, replicas * n, seed}), n).
Ensemble sample_normalized_sums(const ProcessModel& model, const UnitGrid& grid, std::size_t n,
                                std::size_t replicas, std::uint64_t seed);

/// How d_m(t + z delta, t) treats points that leave [0, 1].
enum class DistanceConvention {
  zero_extension,  ///< xi := 0 outside [0, 1]
  stationary,      ///< d_m depends on the lag only: d_m = (E|xi(h) - xi(0)|^m)^{1/m}
};

/// Analytic d_m(t + z delta, t) for a Gaussian model on axes
/// (t: uniform grid with t_nodes, z: uniform on [-1, 1], delta: nu).
SampledField distance_field(const ProcessModel& model, double m, std::size_t t_nodes, std::size_t z_nodes,
                            const WeightedMeasure& nu, DistanceConvention convention = DistanceConvention::zero_extension);

/// Empirical d_m from an ensemble, t on the ensemble grid.
SampledField empirical_distance_field(const Ensemble& paths, double m, std::size_t z_nodes, const WeightedMeasure& nu);

/// C (|z| delta)^beta on the same axes (t-independent).
SampledField power_law_field(double C, double beta, std::size_t t_nodes, std::size_t z_nodes,
                             const WeightedMeasure& nu);

/// K_R(m) * |d|_{p,T; q,[-1,1]; s,nu}. Requires m >= max(2, p, q, s), finite p, q, s.
double kappa(double m, const BesovParams& params, const SampledField& distance);

/// s-norm of (|z| delta)^beta against nu near delta = 0: the integrand behaves like
/// delta^{exponent}, finite iff exponent > -1 (equivalently beta + 1/q > alpha).
struct FinitenessCheck
{
  double exponent;  ///< gamma + beta * s
  bool finite;
};
FinitenessCheck kappa_finiteness(double beta, const BesovParams& params);

/// Closed form of |(|z| delta)^beta|_{q,[-1,1]; s, dnu on (0,1]}:
/// (2/(beta q + 1))^{1/q} s^{-1/s} (beta - alpha + 1/q)^{-1/s}; +inf when not finite.
double power_law_mixed_norm(double beta, const BesovParams& params);

/// s^{-1/s} (beta - alpha + 1/q)^{-1/s}; +inf when beta + 1/q <= alpha.
double remark_envelope(double beta, const BesovParams& params);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// sqrt(ln(2/level)/2) * sqrt(1/n_a + 1/n_b).
double dkw_two_sample_envelope(std::size_t n_a, std::size_t n_b, double level = 0.01);

struct CltConfig
{
  ProcessModel model;
  BesovParams besov{Exponent(2), Exponent(2), Exponent(2), 0.1};
  BesovKind kind = BesovKind::generalized;
  std::size_t grid_n = 512;
  std::vector<std::size_t> n_list{1, 4, 16, 64};
  std::size_t replicas = 500;
  std::vector<double> m_list{4, 6, 8};
  std::vector<double> u_list{3, 4, 5, 6};
  std::uint64_t seed = 1;
  double delta_min = 0.0;  ///< 0 selects 1/grid_n
  std::size_t delta_nodes = 64;
  std::size_t h_nodes = kDefaultShiftNodes;
  std::size_t z_nodes = kDefaultShiftNodes;      ///< z-axis of the kappa field
  std::size_t entropy_z_nodes = 33;              ///< z-grid of the rho_m space; 0 skips beta_tilde
  std::size_t entropy_eps_nodes = 257;
  double kappa_scale = 1.0;                      ///< multiplies kappa (forced-failure fixtures)
  std::size_t budget = 400'000;                  ///< max replicas * sum(n_list)
  std::optional<ProcessModel> reference;         ///< distribution reference for KS distances
  std::size_t reference_replicas = 2000;

  double resolved_delta_min() const;
  void validate() const;
};

struct MomentRow
{
  std::size_t n;
  double m;
  double empirical;
  double se_rel;  ///< delta-method standard error of the moment, relative
  double kappa;
  double beta_tilde;
  bool pass;
};

struct TailRow
{
  std::size_t n;
  double u;
  double empirical;
  double se;
  double bound;  ///< NaN when u <= e (outside the theorem)
  bool in_theorem;
  bool pass;
};

struct KsRow
{
  std::size_t n_a;  ///< 0 denotes the reference ensemble
  std::size_t n_b;
  double distance;
  double envelope;
};

struct NormSummary
{
  std::size_t n;
  std::vector<double> seminorms;
  std::vector<double> norms;
  std::vector<double> quantile_levels;
  std::vector<double> quantiles;  ///< of the seminorm
  double mean = 0.0;
  bool all_finite = true;
};

struct CltReport
{
  CltConfig config;
  double delta_min;
  std::vector<double> kappa;       ///< per m_list entry, scale applied
  std::vector<double> entropy_V;   ///< per m_list entry (empty if skipped)
  std::vector<double> beta_tilde;  ///< per m_list entry (empty if skipped)
  std::vector<NormSummary> per_n;
  std::vector<MomentRow> moments;
  std::vector<TailRow> tails;
  std::vector<double> sup_tail;    ///< sup over n of the empirical tail, per u
  std::vector<KsRow> ks_consecutive;
  std::vector<KsRow> ks_reference;
  bool moments_pass = true;
  bool tails_pass = true;

  bool passed() const { return moments_pass && tails_pass; }
};

/// Generalized (or ordinary) seminorm and full norm of every replica.
void besov_norms(const Ensemble& paths, const BesovParams& params, const WeightedMeasure& delta_measure,
                 std::size_t h_nodes, BesovKind kind, std::vector<double>& seminorms, std::vector<double>& norms);

CltReport run_clt_experiment(const CltConfig& cfg);

}  // namespace besovlab
