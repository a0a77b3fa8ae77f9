#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "abf/ensemble.hpp"
#include "abf/estimator.hpp"
#include "abf/kernel.hpp"
#include "abf/potential.hpp"

namespace abf {

enum class DynamicsMode {
  abf,             // drift -grad V + e1 * NW estimate of E[d1V | x1]
  langevin,        // drift -grad V
  zero_bandwidth,  // drift -grad V + e1 * d1V (each particle only sees itself)
};

DynamicsMode parse_mode(const std::string& name);
std::string to_string(DynamicsMode mode);

struct SimulationConfig {
  double beta = 10.0;  // +inf switches the noise off
  double dt = 0.01;
  std::uint64_t n_steps = 2000;
  std::size_t n_particles = 1000;
  std::uint64_t seed = 1;
  DynamicsMode mode = DynamicsMode::abf;
  InitialCondition init;
  unsigned threads = 1;

  double total_time() const { return dt * static_cast<double>(n_steps); }
  bool operator==(const SimulationConfig&) const = default;
};

/// Throws ConfigError for non-positive beta/dt, zero particles or threads.
void validate(const SimulationConfig& config);

/// Euler-Maruyama integrator for the N-particle system. Forces within a step
/// are computed from the start-of-step snapshot, so results do not depend on
/// update order or on the number of worker threads. The Brownian increment
/// of particle n at step k comes from stream n at counter position k.
class Integrator {
 public:
  Integrator(Potential potential, std::optional<Kernel> kernel, SimulationConfig config);

  void step(ParticleEnsemble& ens);

  using Observer = std::function<void(const ParticleEnsemble&)>;
  /// Advances n_steps, calling `observer` (if set) after every step.
  void run(ParticleEnsemble& ens, std::uint64_t n_steps, const Observer& observer = {});

  const Potential& potential() const { return potential_; }
  const SimulationConfig& config() const { return config_; }
  /// Number of particle force queries that found zero kernel mass.
  std::uint64_t empty_windows() const { return empty_windows_; }

 private:
  void compute_forces(const ParticleEnsemble& ens, std::size_t begin, std::size_t end);
  void query_bias(const ParticleEnsemble& ens, std::size_t begin, std::size_t end);
  void move(ParticleEnsemble& ens, std::size_t begin, std::size_t end);
  void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) const;

  Potential potential_;
  std::optional<Kernel> kernel_;
  std::optional<BinnedEstimator> estimator_;
  SimulationConfig config_;
  double noise_scale_ = 0.0;
  std::vector<double> grad_;
  std::vector<double> d1_;
  std::vector<double> x1_;
  std::vector<double> bias_;
  std::vector<std::uint8_t> empty_;
  std::uint64_t empty_windows_ = 0;
};

// Single-step functional forms.
ParticleEnsemble abf_step(const ParticleEnsemble& ens, const Potential& pot, const Kernel& kernel,
                          const SimulationConfig& config);
ParticleEnsemble langevin_step(const ParticleEnsemble& ens, const Potential& pot, const SimulationConfig& config);
ParticleEnsemble zero_bandwidth_step(const ParticleEnsemble& ens, const Potential& pot,
                                     const SimulationConfig& config);

/// d1V at every particle.
std::vector<double> mean_force_samples(const ParticleEnsemble& ens, const Potential& pot);

/// Nadaraya-Watson estimate of A' on a grid from the current ensemble.
MeanForceProfile estimate_profile(const ParticleEnsemble& ens, const Potential& pot, const Kernel& kernel,
                                  const PeriodicGrid& grid);

}  // namespace abf
