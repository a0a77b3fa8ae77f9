#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "abf/pde.hpp"
#include "abf/reference.hpp"

namespace {

void BM_FpStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto pot = abf::Potential::v1();
  auto rho = abf::GridDensity::from_function(n, n, 4.0, 4.0, [](double x, double y) {
    return (1.0 + std::cos(std::numbers::pi * x / 2.0)) * std::exp(-y * y / 0.18);
  });
  abf::FokkerPlanckSolver solver(pot, {0.0, 0.05, 4.0}, 1.0, n, n, 4.0);
  const double dt = 0.5 * solver.stable_dt(rho);
  for (auto _ : state) solver.step(rho, dt);
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_FpStep)->Arg(64)->Arg(128)->Arg(256);

void BM_ReferenceMeanForce(benchmark::State& state) {
  const auto pot = abf::Potential::v1();
  const abf::PeriodicGrid grid{4.0, static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(abf::mean_force(grid, pot, 10.0));
}
BENCHMARK(BM_ReferenceMeanForce)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
