#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "abf/potential.hpp"

namespace abf {

/// N particles on T_L x R^{d-1}, stored row-major. Particle n draws its
/// Brownian increments from stream `streams[n]` of the master seed.
struct ParticleEnsemble {
  std::size_t dimension = 2;
  double period = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t step = 0;
  double time = 0.0;
  std::vector<double> positions;
  std::vector<std::uint32_t> streams;

  std::size_t size() const { return streams.size(); }
  std::span<double> particle(std::size_t n) { return {positions.data() + n * dimension, dimension}; }
  std::span<const double> particle(std::size_t n) const {
    return {positions.data() + n * dimension, dimension};
  }
  double x1(std::size_t n) const { return positions[n * dimension]; }
  std::vector<double> reaction_coordinates() const;

  bool operator==(const ParticleEnsemble&) const = default;
};

enum class InitialKind { gaussian, uniform_x1, cosine_x1 };

/// Built-in initial densities:
///  gaussian    isotropic N(center, sigma^2) (sigma = 0 places every particle at center)
///  uniform_x1  x1 uniform on the torus, remaining coordinates N(center_rest, sigma^2)
///  cosine_x1   x1 with density (1/L)(1 + cos(2 pi x1 / L)), rest as uniform_x1
struct InitialCondition {
  InitialKind kind = InitialKind::gaussian;
  std::vector<double> center{-1.0, 0.0};
  double sigma = 0.1;

  bool operator==(const InitialCondition&) const = default;
};

InitialKind parse_initial_kind(const std::string& name);
std::string to_string(InitialKind kind);

/// Draws N i.i.d. configurations from the reserved initial-condition stream.
ParticleEnsemble sample_initial(const InitialCondition& init, std::size_t n_particles, std::uint64_t seed,
                                const Potential& pot);

}  // namespace abf
