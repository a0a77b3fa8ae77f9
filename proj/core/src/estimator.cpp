#include "abf/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "abf/error.hpp"
#include "abf/potential.hpp"

namespace abf {

std::vector<double> PeriodicGrid::nodes() const {
  std::vector<double> z(size);
  for (std::size_t i = 0; i < size; ++i) z[i] = node(i);
  return z;
}

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::exact: return "exact";
    case ProfileKind::particle_estimate: return "particle_estimate";
    case ProfileKind::pde_estimate: return "pde_estimate";
    case ProfileKind::free_energy: return "free_energy";
  }
  return "exact";
}

namespace {

void check_sample(std::span<const double> x1, std::span<const double> values) {
  if (x1.empty()) throw UsageError("Nadaraya-Watson estimator needs at least one sample");
  if (x1.size() != values.size()) throw UsageError("positions and values must have the same length");
}

NwEstimate finish(double num, double den, double alpha, double total, std::size_t n) {
  num += alpha * total;
  den += alpha * static_cast<double>(n);
  if (den > 0.0) return {num / den, false};
  return {0.0, true};
}

}  // namespace

NwEstimate nw_estimate(double z, std::span<const double> x1, std::span<const double> values,
                       const Kernel& kernel) {
  check_sample(x1, values);
  double num = 0.0, den = 0.0;
  for (std::size_t m = 0; m < x1.size(); ++m) {
    const double w = kernel.phi(z - x1[m]);
    num += w * values[m];
    den += w;
  }
  if (den > 0.0) return {num / den, false};
  return {0.0, true};
}

MeanForceProfile nw_profile_naive(std::span<const double> x1, std::span<const double> values,
                                  const Kernel& kernel, const PeriodicGrid& grid) {
  MeanForceProfile out{grid, std::vector<double>(grid.size), ProfileKind::particle_estimate, 0};
  for (std::size_t i = 0; i < grid.size; ++i) {
    const auto e = nw_estimate(grid.node(i), x1, values, kernel);
    out.values[i] = e.value;
    if (e.empty) ++out.empty_nodes;
  }
  return out;
}

BinnedEstimator::BinnedEstimator(const Kernel& kernel) : kernel_(kernel) {
  const double period = kernel.period();
  const double width = std::max(kernel.epsilon(), period / 1024.0);
  n_bins_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(period / width)));
  bin_width_ = period / static_cast<double>(n_bins_);
  bin_start_.assign(n_bins_ + 1, 0);
}

std::size_t BinnedEstimator::bin_of(double x) const {
  const double shifted = wrap(x, kernel_.period()) + 0.5 * kernel_.period();
  const auto b = static_cast<std::size_t>(shifted / bin_width_);
  return std::min(b, n_bins_ - 1);
}

void BinnedEstimator::rebuild(std::span<const double> x1, std::span<const double> values) {
  check_sample(x1, values);
  const std::size_t n = x1.size();
  std::fill(bin_start_.begin(), bin_start_.end(), 0u);
  std::vector<std::uint32_t> bin(n);
  for (std::size_t m = 0; m < n; ++m) {
    bin[m] = static_cast<std::uint32_t>(bin_of(x1[m]));
    ++bin_start_[bin[m] + 1];
  }
  for (std::size_t b = 0; b < n_bins_; ++b) bin_start_[b + 1] += bin_start_[b];
  scratch_.resize(n);
  std::vector<std::uint32_t> cursor(bin_start_.begin(), bin_start_.end() - 1);
  total_value_ = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    scratch_[cursor[bin[m]]++] = {wrap(x1[m], kernel_.period()), values[m], static_cast<std::uint32_t>(m)};
    total_value_ += values[m];
  }
  sorted_x1_.resize(n);
  sorted_values_.resize(n);
  order_.resize(n);
  for (std::size_t b = 0; b < n_bins_; ++b) {
    const auto first = scratch_.begin() + bin_start_[b];
    const auto last = scratch_.begin() + bin_start_[b + 1];
    std::sort(first, last);
  }
  for (std::size_t m = 0; m < n; ++m) {
    std::tie(sorted_x1_[m], sorted_values_[m], order_[m]) = scratch_[m];
  }
  own_num_.assign(n, 0.0);
  own_den_.assign(n, 0.0);
  left_num_.assign(n, 0.0);
  left_den_.assign(n, 0.0);
}

void BinnedEstimator::accumulate_pairs(std::size_t bin_begin, std::size_t bin_end) {
  if (!supports_pairwise()) throw UsageError("pairwise estimates need at least 3 bins");
  const double eps = kernel_.epsilon();
  const double w0 = kernel_.psi_wrapped(0.0);
  for (std::size_t b = bin_begin; b < bin_end; ++b) {
    const std::size_t lo = bin_start_[b], hi = bin_start_[b + 1];
    for (std::size_t i = lo; i < hi; ++i) {
      own_num_[i] = w0 * sorted_values_[i];
      own_den_[i] = w0;
    }
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = i + 1; j < hi && sorted_x1_[j] - sorted_x1_[i] < eps; ++j) {
        const double w = kernel_.psi_wrapped(sorted_x1_[i] - sorted_x1_[j]);
        own_num_[i] += w * sorted_values_[j];
        own_den_[i] += w;
        own_num_[j] += w * sorted_values_[i];
        own_den_[j] += w;
      }
    // right neighbour; the last bin sees the first one shifted by a period
    const std::size_t nb = (b + 1) % n_bins_;
    const double shift = nb == 0 ? kernel_.period() : 0.0;
    const std::size_t nlo = bin_start_[nb], nhi = bin_start_[nb + 1];
    if (nlo == nhi) continue;
    // walk down from the right edge; once the nearest neighbour is out of reach, so is the rest
    for (std::size_t i = hi; i-- > lo && sorted_x1_[i] - (sorted_x1_[nlo] + shift) > -eps;)
      for (std::size_t j = nlo; j < nhi; ++j) {
        const double dx = sorted_x1_[i] - (sorted_x1_[j] + shift);
        if (dx <= -eps) break;
        const double w = kernel_.psi_wrapped(dx);
        own_num_[i] += w * sorted_values_[j];
        own_den_[i] += w;
        left_num_[j] += w * sorted_values_[i];
        left_den_[j] += w;
      }
  }
}

NwEstimate BinnedEstimator::sample_estimate(std::size_t slot) const {
  return finish(own_num_[slot] + left_num_[slot], own_den_[slot] + left_den_[slot], kernel_.alpha(), total_value_,
                sorted_x1_.size());
}

NwEstimate BinnedEstimator::query(double z) const {
  if (sorted_x1_.empty()) throw UsageError("Nadaraya-Watson estimator needs at least one sample");
  const double period = kernel_.period();
  const double half = 0.5 * period;
  const double eps = kernel_.epsilon();
  z = wrap(z, period);
  const std::size_t b = bin_of(z);
  const std::size_t span_bins = std::min<std::size_t>(3, n_bins_);
  const auto x_begin = sorted_x1_.begin();
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < span_bins; ++k) {
    // bins b-1, b, b+1 (mod n_bins), visited in that order
    const std::size_t bb = (b + n_bins_ - 1 + k + (span_bins < 3 ? 1 : 0)) % n_bins_;
    std::size_t lo = bin_start_[bb], hi = bin_start_[bb + 1];
    if (n_bins_ >= 4 && lo < hi) {
      // image of z next to this bin; every point within eps of z sits in (zz - eps, zz + eps)
      const double centre = -half + (static_cast<double>(bb) + 0.5) * bin_width_;
      double zz = z;
      if (zz - centre > half) zz -= period;
      if (zz - centre < -half) zz += period;
      lo = static_cast<std::size_t>(std::upper_bound(x_begin + lo, x_begin + hi, zz - eps) - x_begin);
      hi = static_cast<std::size_t>(std::lower_bound(x_begin + lo, x_begin + hi, zz + eps) - x_begin);
    }
    for (std::size_t s = lo; s < hi; ++s) {
      // both points lie in [-L/2, L/2), so one shift reduces the displacement
      double dx = z - sorted_x1_[s];
      if (dx >= half) dx -= period;
      if (dx < -half) dx += period;
      const double w = kernel_.psi_wrapped(dx);
      num += w * sorted_values_[s];
      den += w;
    }
  }
  return finish(num, den, kernel_.alpha(), total_value_, sorted_x1_.size());
}

MeanForceProfile BinnedEstimator::profile(const PeriodicGrid& grid) const {
  MeanForceProfile out{grid, std::vector<double>(grid.size), ProfileKind::particle_estimate, 0};
  for (std::size_t i = 0; i < grid.size; ++i) {
    const auto e = query(grid.node(i));
    out.values[i] = e.value;
    if (e.empty) ++out.empty_nodes;
  }
  return out;
}

MeanForceProfile nw_profile(std::span<const double> x1, std::span<const double> values, const Kernel& kernel,
                            const PeriodicGrid& grid) {
  if (grid.size < 2) throw UsageError("profile grid needs at least 2 nodes");
  if (grid.period != kernel.period()) throw UsageError("grid period does not match kernel period");
  BinnedEstimator est(kernel);
  est.rebuild(x1, values);
  return est.profile(grid);
}

}  // namespace abf
