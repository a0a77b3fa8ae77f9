#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace abf {

/// M cell-centred nodes over one period: z_i = -L/2 + (i + 1/2) L / M.
struct PeriodicGrid {
  double period = 1.0;
  std::size_t size = 200;

  double spacing() const { return period / static_cast<double>(size); }
  double node(std::size_t i) const { return -0.5 * period + (static_cast<double>(i) + 0.5) * spacing(); }
  std::vector<double> nodes() const;

  bool operator==(const PeriodicGrid&) const = default;
};

enum class ProfileKind { exact, particle_estimate, pde_estimate, free_energy };

std::string to_string(ProfileKind kind);

/// Values of A' (or A, for kind free_energy) on a periodic grid.
struct MeanForceProfile {
  PeriodicGrid grid;
  std::vector<double> values;
  ProfileKind kind = ProfileKind::exact;
  /// Nodes where an estimator had no kernel mass (value set to 0).
  std::size_t empty_nodes = 0;
};

}  // namespace abf
