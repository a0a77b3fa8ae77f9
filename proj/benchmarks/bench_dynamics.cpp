#include <benchmark/benchmark.h>

#include "abf/dynamics.hpp"
#include "abf/ensemble.hpp"

namespace {

void run_steps(benchmark::State& state, const abf::Potential& pot, abf::KernelSpec spec, abf::SimulationConfig cfg) {
  cfg.n_particles = static_cast<std::size_t>(state.range(0));
  cfg.threads = static_cast<unsigned>(state.range(1));
  auto ens = abf::sample_initial(cfg.init, cfg.n_particles, cfg.seed, pot);
  abf::Integrator integrator(pot, abf::Kernel(spec), cfg);
  for (auto _ : state) integrator.step(ens);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_StepV1(benchmark::State& state) {
  abf::SimulationConfig cfg;
  run_steps(state, abf::Potential::v1(), {0.0, 0.01, 4.0}, cfg);
}
BENCHMARK(BM_StepV1)->Args({1000, 1})->Args({1000, 4})->Args({8000, 1})->Args({8000, 4});

void BM_StepV2(benchmark::State& state) {
  abf::SimulationConfig cfg;
  run_steps(state, abf::Potential::v2(), {0.0, 0.01, 4.0}, cfg);
}
BENCHMARK(BM_StepV2)->Args({1000, 1});

// wide window: about 400 neighbours per particle
void BM_StepSineQuadratic(benchmark::State& state) {
  abf::SimulationConfig cfg;
  cfg.beta = 1.0;
  cfg.dt = 0.005;
  cfg.init = {abf::InitialKind::uniform_x1, {0.0, 0.0}, 1.0};
  run_steps(state, abf::Potential::sine_quadratic(), {0.0, 0.05, 1.0}, cfg);
}
BENCHMARK(BM_StepSineQuadratic)->Args({4000, 1})->Args({4000, 4});

}  // namespace
