#include "abf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "abf/error.hpp"
#include "abf/potential.hpp"

namespace abf {

namespace {

void check_same_grid(const MeanForceProfile& f, const MeanForceProfile& g) {
  if (!(f.grid == g.grid) || f.values.size() != g.values.size() || f.values.size() != f.grid.size)
    throw UsageError("profiles are defined on different grids");
}

}  // namespace

double grid_l1(const MeanForceProfile& f, const MeanForceProfile& g) {
  check_same_grid(f, g);
  double s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) s += std::abs(f.values[i] - g.values[i]);
  return s * f.grid.spacing();
}

double grid_sup(const MeanForceProfile& f, const MeanForceProfile& g) {
  check_same_grid(f, g);
  double s = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) s = std::max(s, std::abs(f.values[i] - g.values[i]));
  return s;
}

double grid_l1_norm(const MeanForceProfile& f) {
  double s = 0.0;
  for (double v : f.values) s += std::abs(v);
  return s * f.grid.spacing();
}

double loglog_slope(const ConvergenceSeries& series) {
  const auto& pts = series.points;
  if (pts.size() < 3) throw UsageError("slope fit needs at least 3 points");
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!(pts[k].first > 0.0)) throw UsageError("series parameters must be positive");
    if (!(pts[k].second > 0.0)) throw UsageError("series errors must be positive");
  }
  const bool up = pts[1].first > pts[0].first;
  for (std::size_t k = 1; k < pts.size(); ++k)
    if ((pts[k].first > pts[k - 1].first) != up || pts[k].first == pts[k - 1].first)
      throw UsageError("series parameters must be strictly monotone");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(pts.size());
  for (const auto& [p, e] : pts) {
    const double x = std::log(p), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SlopeFit loglog_slope_unsaturated(const ConvergenceSeries& series) {
  auto pts = series.points;
  std::sort(pts.begin(), pts.end());
  SlopeFit fit;
  std::size_t keep = pts.size();
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const double ratio = pts[k].first / pts[k - 1].first;
    // relative change of the error per doubling of the parameter
    const double per_doubling = std::pow(pts[k].second / pts[k - 1].second, std::log(2.0) / std::log(ratio));
    if (std::abs(1.0 - per_doubling) < 0.05) {
      keep = k;
      break;
    }
  }
  if (keep < 3) keep = pts.size();
  ConvergenceSeries used{series.kind, {pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(keep)}};
  for (std::size_t k = keep; k < pts.size(); ++k) fit.saturated.push_back(pts[k].first);
  fit.slope = loglog_slope(used);
  fit.used = keep;
  return fit;
}

namespace {

double well_distance(std::span<const double> x, const std::vector<double>& well, double period) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = i == 0 ? torus_delta(x[0], well[0], period) : x[i] - well[i];
    s += d * d;
  }
  return std::sqrt(s);
}

std::size_t nearest_well(std::span<const double> x, const std::vector<std::vector<double>>& wells, double period,
                         double* distance = nullptr) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < wells.size(); ++k) {
    const double d = well_distance(x, wells[k], period);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  if (distance) *distance = best_d;
  return best;
}

void check_wells(const ParticleEnsemble& ens, const std::vector<std::vector<double>>& wells) {
  if (wells.empty()) throw UsageError("at least one well center is required");
  for (const auto& w : wells)
    if (w.size() != ens.dimension) throw UsageError("well center has wrong dimension");
}

}  // namespace

double well_crossing_fraction(const ParticleEnsemble& initial, const ParticleEnsemble& final_state,
                              const std::vector<std::vector<double>>& wells, double radius) {
  check_wells(initial, wells);
  if (initial.size() != final_state.size() || initial.dimension != final_state.dimension || initial.size() == 0)
    throw UsageError("initial and final ensembles must match and be non-empty");
  std::size_t crossed = 0;
  for (std::size_t n = 0; n < initial.size(); ++n) {
    double d0 = 0.0;
    const std::size_t start = nearest_well(initial.particle(n), wells, initial.period, &d0);
    if (d0 > radius) throw UsageError("particle " + std::to_string(n) + " does not start inside a well");
    if (nearest_well(final_state.particle(n), wells, final_state.period) != start) ++crossed;
  }
  return static_cast<double>(crossed) / static_cast<double>(initial.size());
}

std::vector<double> well_occupancy(const ParticleEnsemble& ens, const std::vector<std::vector<double>>& wells) {
  check_wells(ens, wells);
  std::vector<double> out(wells.size(), 0.0);
  if (ens.size() == 0) return out;
  for (std::size_t n = 0; n < ens.size(); ++n) out[nearest_well(ens.particle(n), wells, ens.period)] += 1.0;
  for (double& v : out) v /= static_cast<double>(ens.size());
  return out;
}

namespace {

std::size_t cell_of(double x, const PeriodicGrid& grid) {
  const double shifted = wrap(x, grid.period) + 0.5 * grid.period;
  return std::min(static_cast<std::size_t>(shifted / grid.spacing()), grid.size - 1);
}

}  // namespace

ConditionalProfile conditional_mean_profile(std::span<const double> x1, std::span<const double> y,
                                            const PeriodicGrid& grid) {
  if (x1.size() != y.size()) throw UsageError("x1 and y samples must have the same length");
  if (grid.size == 0) throw UsageError("conditional profile needs at least one bin");
  ConditionalProfile out{grid, std::vector<double>(grid.size, 0.0), std::vector<std::size_t>(grid.size, 0), 0};
  for (std::size_t n = 0; n < x1.size(); ++n) {
    const std::size_t c = cell_of(x1[n], grid);
    out.values[c] += y[n];
    ++out.counts[c];
  }
  for (std::size_t c = 0; c < grid.size; ++c) {
    if (out.counts[c] == 0) {
      out.values[c] = std::numeric_limits<double>::quiet_NaN();
      ++out.missing;
    } else {
      out.values[c] /= static_cast<double>(out.counts[c]);
    }
  }
  return out;
}

double FourierMode::amplitude() const { return std::hypot(cos_coeff, sin_coeff); }

FourierMode fourier_mode(const PeriodicGrid& grid, std::span<const double> values, int k) {
  if (values.size() != grid.size) throw UsageError("values do not match grid");
  FourierMode m;
  std::size_t used = 0;
  const double w = 2.0 * std::numbers::pi * k / grid.period;
  for (std::size_t i = 0; i < grid.size; ++i) {
    if (std::isnan(values[i])) continue;
    m.cos_coeff += values[i] * std::cos(w * grid.node(i));
    m.sin_coeff += values[i] * std::sin(w * grid.node(i));
    ++used;
  }
  if (used == 0) throw UsageError("no finite values for Fourier fit");
  m.cos_coeff *= 2.0 / static_cast<double>(used);
  m.sin_coeff *= 2.0 / static_cast<double>(used);
  return m;
}

std::vector<double> histogram_density(std::span<const double> x1, const PeriodicGrid& grid) {
  if (x1.empty()) throw UsageError("histogram needs samples");
  std::vector<double> out(grid.size, 0.0);
  for (double x : x1) out[cell_of(x, grid)] += 1.0;
  const double norm = 1.0 / (static_cast<double>(x1.size()) * grid.spacing());
  for (double& v : out) v *= norm;
  return out;
}

}  // namespace abf
