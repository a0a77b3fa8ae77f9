#include "abf/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <utility>

#include "abf/error.hpp"
#include "abf/rng.hpp"

namespace abf {

DynamicsMode parse_mode(const std::string& name) {
  if (name == "abf") return DynamicsMode::abf;
  if (name == "langevin") return DynamicsMode::langevin;
  if (name == "zero_bandwidth") return DynamicsMode::zero_bandwidth;
  throw ConfigError("unknown sim.mode '" + name + "' (expected abf, langevin, zero_bandwidth)");
}

std::string to_string(DynamicsMode mode) {
  switch (mode) {
    case DynamicsMode::abf: return "abf";
    case DynamicsMode::langevin: return "langevin";
    case DynamicsMode::zero_bandwidth: return "zero_bandwidth";
  }
  return "abf";
}

void validate(const SimulationConfig& c) {
  if (!(c.beta > 0.0)) throw ConfigError("sim.beta must be positive");
  if (!(c.dt >= 0.0) || !std::isfinite(c.dt)) throw ConfigError("sim.dt must be non-negative and finite");
  if (c.n_particles == 0) throw ConfigError("sim.n_particles must be positive");
  if (c.threads == 0) throw ConfigError("sim.threads must be positive");
}

Integrator::Integrator(Potential potential, std::optional<Kernel> kernel, SimulationConfig config)
    : potential_(std::move(potential)), kernel_(std::move(kernel)), config_(std::move(config)) {
  validate(config_);
  if (config_.mode == DynamicsMode::abf) {
    if (!kernel_) throw ConfigError("abf dynamics needs a kernel");
    if (kernel_->period() != potential_.period())
      throw ConfigError("kernel period does not match potential period");
    estimator_.emplace(*kernel_);
  }
  noise_scale_ = std::isinf(config_.beta) ? 0.0 : std::sqrt(2.0 * config_.dt / config_.beta);
}

void Integrator::parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) const {
  const std::size_t workers = std::min<std::size_t>(config_.threads, std::max<std::size_t>(n, 1));
  if (workers <= 1) {
    body(0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
      const std::size_t b = std::min(n, w * chunk), e = std::min(n, b + chunk);
      pool.emplace_back([&body, &errors, w, b, e] {
        try {
          body(b, e);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    try {
      body(0, std::min(n, chunk));
    } catch (...) {
      errors[0] = std::current_exception();
    }
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

void Integrator::compute_forces(const ParticleEnsemble& ens, std::size_t begin, std::size_t end) {
  const std::size_t d = ens.dimension;
  for (std::size_t n = begin; n < end; ++n) {
    std::span<double> g(grad_.data() + n * d, d);
    potential_.gradient(ens.particle(n), g);
    d1_[n] = g[0];
    x1_[n] = ens.x1(n);
  }
}

void Integrator::query_bias(const ParticleEnsemble& ens, std::size_t begin, std::size_t end) {
  for (std::size_t n = begin; n < end; ++n) {
    switch (config_.mode) {
      case DynamicsMode::abf: {
        const auto e = estimator_->query(ens.x1(n));
        bias_[n] = e.value;
        empty_[n] = e.empty ? 1 : 0;
        break;
      }
      case DynamicsMode::langevin: bias_[n] = 0.0; break;
      case DynamicsMode::zero_bandwidth: bias_[n] = d1_[n]; break;
    }
  }
}

void Integrator::move(ParticleEnsemble& ens, std::size_t begin, std::size_t end) {
  const std::size_t d = ens.dimension;
  const double dt = config_.dt;
  double noise[16];
  std::vector<double> big_noise(d > 16 ? d : 0);
  std::span<double> xi = d > 16 ? std::span<double>(big_noise) : std::span<double>(noise, d);
  for (std::size_t n = begin; n < end; ++n) {
    if (noise_scale_ > 0.0) RandomStream(ens.seed, ens.streams[n]).normals(ens.step, xi);
    auto x = ens.particle(n);
    const double* g = grad_.data() + n * d;
    for (std::size_t i = 0; i < d; ++i) {
      double drift = -g[i];
      if (i == 0) drift += bias_[n];
      if (!std::isfinite(drift)) throw StepError("non-finite drift", n);
      x[i] += drift * dt + (noise_scale_ > 0.0 ? noise_scale_ * xi[i] : 0.0);
    }
    x[0] = wrap(x[0], ens.period);
  }
}

void Integrator::step(ParticleEnsemble& ens) {
  const std::size_t n = ens.size();
  if (n == 0) throw UsageError("cannot step an empty ensemble");
  if (ens.dimension != potential_.dimension()) throw ConfigError("ensemble dimension does not match potential");
  if (ens.period != potential_.period()) throw ConfigError("ensemble period does not match potential");
  grad_.resize(n * ens.dimension);
  d1_.resize(n);
  x1_.resize(n);
  bias_.resize(n);
  empty_.assign(n, 0);

  parallel_for(n, [&](std::size_t b, std::size_t e) { compute_forces(ens, b, e); });
  if (estimator_) estimator_->rebuild(x1_, d1_);
  if (estimator_ && estimator_->supports_pairwise()) {
    parallel_for(estimator_->bins(), [&](std::size_t b, std::size_t e) { estimator_->accumulate_pairs(b, e); });
    parallel_for(n, [&](std::size_t b, std::size_t e) {
      for (std::size_t s = b; s < e; ++s) {
        const auto est = estimator_->sample_estimate(s);
        const std::size_t m = estimator_->sample_index(s);
        bias_[m] = est.value;
        empty_[m] = est.empty ? 1 : 0;
      }
    });
  } else {
    parallel_for(n, [&](std::size_t b, std::size_t e) { query_bias(ens, b, e); });
  }
  for (std::size_t m = 0; m < n; ++m) empty_windows_ += empty_[m];
  parallel_for(n, [&](std::size_t b, std::size_t e) { move(ens, b, e); });

  ++ens.step;
  ens.time += config_.dt;
}

void Integrator::run(ParticleEnsemble& ens, std::uint64_t n_steps, const Observer& observer) {
  for (std::uint64_t k = 0; k < n_steps; ++k) {
    step(ens);
    if (observer) observer(ens);
  }
}

namespace {

ParticleEnsemble one_step(const ParticleEnsemble& ens, const Potential& pot, std::optional<Kernel> kernel,
                          SimulationConfig config, DynamicsMode mode) {
  config.mode = mode;
  config.n_particles = std::max<std::size_t>(ens.size(), 1);
  Integrator integrator(pot, std::move(kernel), config);
  ParticleEnsemble out = ens;
  integrator.step(out);
  return out;
}

}  // namespace

ParticleEnsemble abf_step(const ParticleEnsemble& ens, const Potential& pot, const Kernel& kernel,
                          const SimulationConfig& config) {
  return one_step(ens, pot, kernel, config, DynamicsMode::abf);
}

ParticleEnsemble langevin_step(const ParticleEnsemble& ens, const Potential& pot, const SimulationConfig& config) {
  return one_step(ens, pot, std::nullopt, config, DynamicsMode::langevin);
}

ParticleEnsemble zero_bandwidth_step(const ParticleEnsemble& ens, const Potential& pot,
                                     const SimulationConfig& config) {
  return one_step(ens, pot, std::nullopt, config, DynamicsMode::zero_bandwidth);
}

std::vector<double> mean_force_samples(const ParticleEnsemble& ens, const Potential& pot) {
  std::vector<double> out(ens.size());
  for (std::size_t n = 0; n < ens.size(); ++n) out[n] = pot.d1(ens.particle(n));
  return out;
}

MeanForceProfile estimate_profile(const ParticleEnsemble& ens, const Potential& pot, const Kernel& kernel,
                                  const PeriodicGrid& grid) {
  const auto x1 = ens.reaction_coordinates();
  const auto values = mean_force_samples(ens, pot);
  return nw_profile(x1, values, kernel, grid);
}

}  // namespace abf
