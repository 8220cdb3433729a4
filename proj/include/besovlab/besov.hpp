#pragma once

#include <cstddef>

#include "besovlab/mixed_norms.hpp"
#include "besovlab/quadrature.hpp"

namespace besovlab {

/// Exponents (p, q, s) and smoothness alpha of a Besov (semi)norm.
/// s must be finite; p and q may be infinite.
struct BesovParams
{
  BesovParams(Exponent p_, Exponent q_, Exponent s_, double alpha_);

  Exponent p;
  Exponent q;
  Exponent s;
  double alpha;
};

enum class BesovKind { ordinary, generalized };

inline constexpr std::size_t kDefaultShiftNodes = 65;

/// t -> f(t + h) - f(t) on the same grid (zero extension, linear interpolation).
SampledPath shift_difference(const SampledPath& f, double h);

/// L_p modulus of continuity: max over a uniform h-grid on [-delta, delta].
double modulus_continuity(const SampledPath& f, double delta, Exponent p,
                          std::size_t h_nodes = kDefaultShiftNodes);

/// q-averaged modulus (trapezoid over the h-grid); q = inf gives modulus_continuity.
double modulus_q(const SampledPath& f, double delta, Exponent p, Exponent q,
                 std::size_t h_nodes = kDefaultShiftNodes);

/// s/q - alpha*s - 1, the exponent of the delta-measure in the mixed form.
double gamma_exponent(const BesovParams& params);

/// Power measure delta^{-1-alpha*s} on (delta_min, 1].
WeightedMeasure besov_delta_measure(const BesovParams& params, double delta_min, std::size_t nodes);

/// Power measure delta^{gamma} on (delta_min, 1].
WeightedMeasure nu_measure(const BesovParams& params, double delta_min, std::size_t nodes);

/// (int Delta(delta)^s delta^{-1-alpha s} d delta)^{1/s} with Delta the plain
/// (ordinary) or q-averaged (generalized) modulus.
double besov_seminorm(const SampledPath& f, const BesovParams& params, const WeightedMeasure& delta_measure,
                      std::size_t h_nodes = kDefaultShiftNodes, BesovKind kind = BesovKind::generalized);

double besov_norm(const SampledPath& f, const BesovParams& params, const WeightedMeasure& delta_measure,
                  std::size_t h_nodes = kDefaultShiftNodes, BesovKind kind = BesovKind::generalized);

/// Generalized seminorm through the 3-axis field V(t,z,delta) = f(t + z delta) - f(t)
/// and the mixed norm over (t: p), (z in [-1,1]: q), (delta: s against nu).
double seminorm_via_mixed(const SampledPath& f, const BesovParams& params, std::size_t z_nodes,
                          const WeightedMeasure& nu);

/// The field V(t, z, delta) with axes (t, z, delta) and their weights.
SampledField increment_field(const SampledPath& f, std::size_t z_nodes, const WeightedMeasure& delta_measure);

}  // namespace besovlab
