#pragma once

#include <cstddef>

#include "abf/potential.hpp"
#include "abf/profile.hpp"

namespace abf {

/// Tensor Gauss-Legendre quadrature over the orthogonal slice
/// {x1 = z} x [-y_max, y_max]^{d-1}.
struct QuadratureOptions {
  double y_max = 6.0;
  std::size_t n_quad = 200;
  /// Largest allowed boundary integrand relative to the slice peak.
  double tail_tolerance = 1e-12;

  bool operator==(const QuadratureOptions&) const = default;
};

/// Slice integrals with the Boltzmann factor rescaled by exp(beta * v_min)
/// to avoid under/overflow: the true integrals are these times exp(-beta v_min).
struct SliceWeights {
  double numerator = 0.0;    // int d1V(z, y) e^{-beta V(z, y)} dy  (rescaled)
  double denominator = 0.0;  // int e^{-beta V(z, y)} dy            (rescaled)
  double v_min = 0.0;
  double tail_ratio = 0.0;   // boundary integrand / peak integrand

  double mean_force() const { return numerator / denominator; }
};

/// Throws QuadratureError when the integrand on the slice boundary exceeds
/// tail_tolerance times its peak (y_max too small).
SliceWeights slice_weights(double z, const Potential& pot, double beta, const QuadratureOptions& opts = {});

/// Exact mean force A'(z) = E[d1V | x1 = z] under the canonical measure.
MeanForceProfile mean_force(const PeriodicGrid& grid, const Potential& pot, double beta,
                            const QuadratureOptions& opts = {});

/// Free energy A(z) = -(1/beta) log int e^{-beta V(z, y)} dy, shifted so min A = 0.
MeanForceProfile free_energy(const PeriodicGrid& grid, const Potential& pot, double beta,
                             const QuadratureOptions& opts = {});

/// Unshifted free energy at a single point (for finite-difference checks).
double free_energy_at(double z, const Potential& pot, double beta, const QuadratureOptions& opts = {});

}  // namespace abf
