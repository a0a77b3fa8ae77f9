#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "abf/ensemble.hpp"
#include "abf/profile.hpp"

namespace abf {

/// Midpoint-rule L1 distance over one period. Throws UsageError on grid mismatch.
double grid_l1(const MeanForceProfile& f, const MeanForceProfile& g);
/// Max-norm distance on the grid.
double grid_sup(const MeanForceProfile& f, const MeanForceProfile& g);
/// Midpoint-rule L1 norm of a profile.
double grid_l1_norm(const MeanForceProfile& f);

enum class SeriesKind { n_particles, epsilon };

struct ConvergenceSeries {
  SeriesKind kind = SeriesKind::n_particles;
  std::vector<std::pair<double, double>> points;  // (parameter, error)
};

/// Least-squares slope of log(error) against log(parameter). Needs >= 3
/// points, positive strictly monotone parameters and positive errors.
double loglog_slope(const ConvergenceSeries& series);

struct SlopeFit {
  double slope = 0.0;
  std::size_t used = 0;
  std::vector<double> saturated;  // excluded parameter values
};

/// Slope fit that drops the tail of the series once doubling the parameter
/// changes the error by less than 5% (error floor reached). Falls back to
/// the full series if fewer than 3 points would remain.
SlopeFit loglog_slope_unsaturated(const ConvergenceSeries& series);

/// Fraction of particles whose final nearest well differs from their initial
/// one (periodic distance in x1). Throws UsageError if a particle starts
/// farther than `radius` from every well.
double well_crossing_fraction(const ParticleEnsemble& initial, const ParticleEnsemble& final_state,
                              const std::vector<std::vector<double>>& wells, double radius);

/// Fraction of particles whose nearest well is wells[k].
std::vector<double> well_occupancy(const ParticleEnsemble& ens, const std::vector<std::vector<double>>& wells);

/// Binned average of y given x1; bins are the cells of `grid`. Empty bins
/// hold NaN and are counted in `missing`.
struct ConditionalProfile {
  PeriodicGrid grid;
  std::vector<double> values;
  std::vector<std::size_t> counts;
  std::size_t missing = 0;
};

ConditionalProfile conditional_mean_profile(std::span<const double> x1, std::span<const double> y,
                                            const PeriodicGrid& grid);

struct FourierMode {
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
  double amplitude() const;
};

/// Coefficients of cos/sin(2 pi k z / L) from grid values (NaN entries skipped).
FourierMode fourier_mode(const PeriodicGrid& grid, std::span<const double> values, int k = 1);

/// Histogram density of x1 on the cells of `grid` (integrates to 1).
std::vector<double> histogram_density(std::span<const double> x1, const PeriodicGrid& grid);

}  // namespace abf
