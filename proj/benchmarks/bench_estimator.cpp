#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "abf/estimator.hpp"

namespace {

struct Sample {
  std::vector<double> x, f;
};

Sample uniform_sample(std::size_t n, double period) {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> pos(-0.5 * period, 0.5 * period), val(-5.0, 5.0);
  Sample s{std::vector<double>(n), std::vector<double>(n)};
  for (auto& v : s.x) v = pos(gen);
  for (auto& v : s.f) v = val(gen);
  return s;
}

// N particles, M = 200 grid nodes, eps = 0.01 on a period of 4
void BM_ProfileNaive(benchmark::State& state) {
  const auto s = uniform_sample(static_cast<std::size_t>(state.range(0)), 4.0);
  const abf::Kernel k({0.0, 0.01, 4.0});
  const abf::PeriodicGrid grid{4.0, 200};
  for (auto _ : state) benchmark::DoNotOptimize(abf::nw_profile_naive(s.x, s.f, k, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProfileNaive)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_ProfileBinned(benchmark::State& state) {
  const auto s = uniform_sample(static_cast<std::size_t>(state.range(0)), 4.0);
  const abf::Kernel k({0.0, 0.01, 4.0});
  const abf::PeriodicGrid grid{4.0, 200};
  for (auto _ : state) benchmark::DoNotOptimize(abf::nw_profile(s.x, s.f, k, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProfileBinned)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

// forces at every sample: one query per particle against the symmetric pass
void BM_SampleQueries(benchmark::State& state) {
  const auto s = uniform_sample(static_cast<std::size_t>(state.range(0)), 1.0);
  abf::BinnedEstimator est(abf::Kernel({0.0, 0.05, 1.0}));
  est.rebuild(s.x, s.f);
  for (auto _ : state)
    for (double z : s.x) benchmark::DoNotOptimize(est.query(z));
}
BENCHMARK(BM_SampleQueries)->Arg(1000)->Arg(4000);

void BM_SamplePairwise(benchmark::State& state) {
  const auto s = uniform_sample(static_cast<std::size_t>(state.range(0)), 1.0);
  abf::BinnedEstimator est(abf::Kernel({0.0, 0.05, 1.0}));
  for (auto _ : state) {
    est.rebuild(s.x, s.f);
    est.accumulate_pairs(0, est.bins());
    for (std::size_t i = 0; i < s.x.size(); ++i) benchmark::DoNotOptimize(est.sample_estimate(i));
  }
}
BENCHMARK(BM_SamplePairwise)->Arg(1000)->Arg(4000);

}  // namespace
