#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "abf/kernel.hpp"
#include "abf/potential.hpp"
#include "abf/profile.hpp"

namespace abf {

/// Cell-centred density on [-L/2, L/2) x [-y_max, y_max] (two-dimensional
/// potentials only). values[i * ny + j] is the density in cell (x1_i, y_j).
class GridDensity {
 public:
  GridDensity(std::size_t nx, std::size_t ny, double period, double y_max);

  /// Samples `density(x1, y)` at cell centres and normalises to unit mass.
  static GridDensity from_function(std::size_t nx, std::size_t ny, double period, double y_max,
                                   const std::function<double(double, double)>& density);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double period() const { return period_; }
  double y_max() const { return y_max_; }
  double hx() const { return period_ / static_cast<double>(nx_); }
  double hy() const { return 2.0 * y_max_ / static_cast<double>(ny_); }
  double x1(std::size_t i) const { return -0.5 * period_ + (static_cast<double>(i) + 0.5) * hx(); }
  double y(std::size_t j) const { return -y_max_ + (static_cast<double>(j) + 0.5) * hy(); }
  PeriodicGrid column_grid() const { return {period_, nx_}; }

  double& at(std::size_t i, std::size_t j) { return values_[i * ny_ + j]; }
  double at(std::size_t i, std::size_t j) const { return values_[i * ny_ + j]; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double time = 0.0;

  double mass() const;
  /// x1-marginal density p^1 on the column grid.
  std::vector<double> marginal() const;
  /// p^g(x1) = int g(x1, y) p(x1, y) dy on the column grid.
  std::vector<double> weighted_marginal(const std::function<double(double, double)>& g) const;

 private:
  std::size_t nx_, ny_;
  double period_, y_max_;
  std::vector<double> values_;
};

/// Exact solution of the heat equation d_t p = (1/beta) p'' on T_L for a
/// cell-centred initial density: Fourier mode k is damped by
/// exp(-(2 pi k / L)^2 t / beta).
std::vector<double> heat_solve(std::span<const double> p0, double t, double beta, double period);

/// (phi_eta * p^{d1V}) / (phi_eta * p^1) on the column grid, with the
/// convolution taken as a discrete circular sum over a normalised sampled kernel.
/// Throws SingularDensityError on a vanishing denominator.
MeanForceProfile regularized_force(const GridDensity& rho, const Potential& pot, const KernelSpec& spec);

/// Conservative explicit finite-volume scheme for
///   d_t p = div(p grad V + (1/beta) grad p) - d_1(p F_eta[p])
/// with exponentially fitted (upwind-limit) drift fluxes, centred diffusion,
/// periodic x1 and zero-flux walls in y. Along x1 the drift is transported
/// centrally wherever the cell Peclet number allows it.
class FokkerPlanckSolver {
 public:
  /// `biased = false` drops the regularized force term (plain Fokker-Planck).
  FokkerPlanckSolver(Potential pot, KernelSpec spec, double beta, std::size_t nx, std::size_t ny, double y_max,
                     bool biased = true);

  /// Throws ConfigError (with a suggested dt) when dt exceeds the stability bounds
  /// dt <= h^2 beta / 4 and dt max|drift| <= h / 2.
  void step(GridDensity& rho, double dt);
  void advance(GridDensity& rho, double t_end, double dt);

  /// Largest dt satisfying both bounds for the given density.
  double stable_dt(const GridDensity& rho);

 private:
  void compute_bias(const GridDensity& rho);
  double max_drift() const;

  Potential pot_;
  KernelSpec spec_;
  double beta_;
  std::size_t nx_, ny_;
  double y_max_;
  bool biased_;
  double period_;
  std::vector<double> d1v_face_;   // d1V at (x1_{i+1/2}, y_j), index i * ny + j
  std::vector<double> d2v_face_;   // d2V at (x1_i, y_{j+1/2}), j < ny - 1
  std::vector<double> bias_face_;  // regularized force at x1_{i+1/2}
  std::vector<double> flux_x_, flux_y_;
};

/// One step of the regularized Fokker-Planck equation (functional form).
GridDensity fp_step(const GridDensity& rho, const Potential& pot, const KernelSpec& spec, double dt, double beta);

}  // namespace abf
