#include "abf/ensemble.hpp"

#include <cmath>
#include <numbers>

#include "abf/error.hpp"
#include "abf/rng.hpp"

namespace abf {

std::vector<double> ParticleEnsemble::reaction_coordinates() const {
  std::vector<double> out(size());
  for (std::size_t n = 0; n < size(); ++n) out[n] = x1(n);
  return out;
}

InitialKind parse_initial_kind(const std::string& name) {
  if (name == "gaussian") return InitialKind::gaussian;
  if (name == "uniform_x1") return InitialKind::uniform_x1;
  if (name == "cosine_x1") return InitialKind::cosine_x1;
  throw ConfigError("unknown initial condition '" + name + "' (expected gaussian, uniform_x1, cosine_x1)");
}

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::gaussian: return "gaussian";
    case InitialKind::uniform_x1: return "uniform_x1";
    case InitialKind::cosine_x1: return "cosine_x1";
  }
  return "gaussian";
}

namespace {

// Rejection sampler for (1/L)(1 + cos(2 pi x / L)) on [-L/2, L/2).
double sample_cosine(SequentialStream& rng, double period) {
  const double k = 2.0 * std::numbers::pi / period;
  for (;;) {
    const double x = (rng.uniform() - 0.5) * period;
    if (2.0 * rng.uniform() <= 1.0 + std::cos(k * x)) return x;
  }
}

}  // namespace

ParticleEnsemble sample_initial(const InitialCondition& init, std::size_t n_particles, std::uint64_t seed,
                                const Potential& pot) {
  const std::size_t d = pot.dimension();
  if (init.center.size() != d) throw ConfigError("init.center must have one entry per coordinate");
  if (!(init.sigma >= 0.0)) throw ConfigError("init.sigma must be >= 0");
  if (n_particles == 0) throw ConfigError("sim.n_particles must be positive");
  if (n_particles >= kInitStream) throw ConfigError("too many particles");

  ParticleEnsemble ens;
  ens.dimension = d;
  ens.period = pot.period();
  ens.seed = seed;
  ens.positions.resize(n_particles * d);
  ens.streams.resize(n_particles);

  SequentialStream rng(seed, kInitStream);
  for (std::size_t n = 0; n < n_particles; ++n) {
    ens.streams[n] = static_cast<std::uint32_t>(n);
    auto x = ens.particle(n);
    for (std::size_t i = 0; i < d; ++i) {
      const double noise = init.sigma > 0.0 ? init.sigma * rng.normal() : 0.0;
      x[i] = init.center[i] + noise;
    }
    if (init.kind == InitialKind::uniform_x1) x[0] = (rng.uniform() - 0.5) * ens.period;
    if (init.kind == InitialKind::cosine_x1) x[0] = sample_cosine(rng, ens.period);
    x[0] = wrap(x[0], ens.period);
  }
  return ens;
}

}  // namespace abf
