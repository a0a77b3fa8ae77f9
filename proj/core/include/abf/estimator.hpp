#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

#include "abf/kernel.hpp"
#include "abf/profile.hpp"

namespace abf {

struct NwEstimate {
  double value = 0.0;
  /// True when the query point had zero kernel mass (alpha = 0 and no
  /// particle within epsilon). The value is then 0.
  bool empty = false;
};

/// Reference Nadaraya-Watson estimator, a straight O(N) loop:
/// sum_m phi(z - x_m) f_m / sum_m phi(z - x_m).
/// Throws UsageError on an empty sample or mismatched spans.
NwEstimate nw_estimate(double z, std::span<const double> x1, std::span<const double> values,
                       const Kernel& kernel);

/// Naive O(N M) profile used as an oracle for the binned one.
MeanForceProfile nw_profile_naive(std::span<const double> x1, std::span<const double> values,
                                  const Kernel& kernel, const PeriodicGrid& grid);

/// Binned Nadaraya-Watson estimator. Samples are counting-sorted into bins of
/// width >= max(epsilon, L/1024); a query only visits the three bins that can
/// intersect [z - eps, z + eps]. Within a bin, samples are kept sorted by
/// position so a query only touches the run that lies inside the support.
class BinnedEstimator {
 public:
  explicit BinnedEstimator(const Kernel& kernel);

  void rebuild(std::span<const double> x1, std::span<const double> values);

  NwEstimate query(double z) const;
  MeanForceProfile profile(const PeriodicGrid& grid) const;

  /// Estimates at the sample positions themselves, each pair weighted once.
  /// Call accumulate_pairs over every bin (disjoint bin ranges may run
  /// concurrently), then read sample_estimate for slots in sorted order; the
  /// summation order is fixed, so results do not depend on how bins are split.
  /// Needs at least 3 bins; callers fall back to query otherwise.
  bool supports_pairwise() const { return n_bins_ >= 3; }
  void accumulate_pairs(std::size_t bin_begin, std::size_t bin_end);
  NwEstimate sample_estimate(std::size_t slot) const;
  /// Original index of the sample held in sorted slot `slot`.
  std::size_t sample_index(std::size_t slot) const { return order_[slot]; }

  std::size_t bins() const { return n_bins_; }
  std::size_t size() const { return sorted_x1_.size(); }
  const Kernel& kernel() const { return kernel_; }

 private:
  std::size_t bin_of(double x) const;

  Kernel kernel_;
  std::size_t n_bins_;
  double bin_width_;
  std::vector<std::uint32_t> bin_start_;
  std::vector<double> sorted_x1_;
  std::vector<double> sorted_values_;
  std::vector<std::uint32_t> order_;
  std::vector<std::tuple<double, double, std::uint32_t>> scratch_;
  // pairwise sums: own bin and the contribution from the bin on the left
  std::vector<double> own_num_, own_den_, left_num_, left_den_;
  double total_value_ = 0.0;
};

/// Binned profile on a grid (convenience wrapper).
MeanForceProfile nw_profile(std::span<const double> x1, std::span<const double> values, const Kernel& kernel,
                            const PeriodicGrid& grid);

}  // namespace abf
