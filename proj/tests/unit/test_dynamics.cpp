#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "abf/dynamics.hpp"
#include "abf/error.hpp"

namespace abf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SimulationConfig config(double beta, double dt, std::size_t n, DynamicsMode mode = DynamicsMode::abf) {
  SimulationConfig c;
  c.beta = beta;
  c.dt = dt;
  c.n_particles = n;
  c.mode = mode;
  return c;
}

ParticleEnsemble make(std::vector<double> xy, double period) {
  ParticleEnsemble e;
  e.dimension = 2;
  e.period = period;
  e.positions = std::move(xy);
  e.streams.resize(e.positions.size() / 2);
  std::iota(e.streams.begin(), e.streams.end(), 0u);
  return e;
}

TEST(Steps, ZeroDtIsIdentity) {
  const auto pot = Potential::v1();
  const Kernel k({0.0, 0.01, 4.0});
  const auto ens = sample_initial({}, 50, 3, pot);
  for (auto mode : {DynamicsMode::abf, DynamicsMode::langevin, DynamicsMode::zero_bandwidth}) {
    const auto c = config(10.0, 0.0, 50, mode);
    ParticleEnsemble next = mode == DynamicsMode::abf        ? abf_step(ens, pot, k, c)
                            : mode == DynamicsMode::langevin ? langevin_step(ens, pot, c)
                                                             : zero_bandwidth_step(ens, pot, c);
    EXPECT_EQ(next.positions, ens.positions) << to_string(mode);
    EXPECT_EQ(next.step, 1u);
  }
}

TEST(AbfStep, SingleParticleAtWellDoesNotMove) {
  const auto pot = Potential::v1();
  const Kernel k({0.0, 0.01, 4.0});
  for (double x : {-1.0, 1.0}) {
    const auto ens = make({x, 0.0}, 4.0);
    const auto next = abf_step(ens, pot, k, config(kInf, 0.01, 1));
    EXPECT_NEAR(next.particle(0)[0], x, 1e-15);
    EXPECT_NEAR(next.particle(0)[1], 0.0, 1e-15);
  }
}

// Independent straight-line reimplementation of one noiseless step.
double oracle_d1(double x, double y) {
  return -10.0 * x * std::exp(-x * x - y * y) + 10.0 * (x - 1.0) * std::exp(-(x - 1.0) * (x - 1.0) - y * y) +
         10.0 * (x + 1.0) * std::exp(-(x + 1.0) * (x + 1.0) - y * y) + 0.8 * x * x * x;
}
double oracle_d2(double x, double y) {
  return -10.0 * y * std::exp(-x * x - y * y) + 10.0 * y * std::exp(-(x - 1.0) * (x - 1.0) - y * y) +
         10.0 * y * std::exp(-(x + 1.0) * (x + 1.0) - y * y) + 0.8 * y * y * y;
}
double oracle_phi(double d, double alpha, double eps) {
  while (d >= 2.0) d -= 4.0;
  while (d < -2.0) d += 4.0;
  const double u = d / eps;
  return alpha + (std::abs(u) < 1.0 ? bump_normalization() * std::exp(-1.0 / (1.0 - u * u)) / eps : 0.0);
}

TEST(AbfStep, TwoParticleStepMatchesScalarOracle) {
  const double alpha = 0.03, eps = 0.3, dt = 0.01;
  const std::vector<double> p{-0.35, 0.2, -0.2, -0.15};
  const auto next =
      abf_step(make(p, 4.0), Potential::v1(), Kernel({alpha, eps, 4.0}), config(kInf, dt, 2));
  const double f[2] = {oracle_d1(p[0], p[1]), oracle_d1(p[2], p[3])};
  for (int n = 0; n < 2; ++n) {
    double num = 0.0, den = 0.0;
    for (int m = 0; m < 2; ++m) {
      const double w = oracle_phi(p[2 * n] - p[2 * m], alpha, eps);
      num += w * f[m];
      den += w;
    }
    const double x = p[2 * n] + dt * (-f[n] + num / den);
    const double y = p[2 * n + 1] + dt * (-oracle_d2(p[2 * n], p[2 * n + 1]));
    EXPECT_NEAR(next.particle(n)[0], x, 1e-12);
    EXPECT_NEAR(next.particle(n)[1], y, 1e-12);
  }
}

TEST(AbfStep, SharedPositionFeelsEnsembleMeanIncludingSelf) {
  const auto pot = Potential::v1();
  const std::vector<double> p{0.4, -0.3, 0.4, 0.1, 0.4, 0.5};
  const double dt = 0.001;
  const auto next = abf_step(make(p, 4.0), pot, Kernel({0.0, 0.01, 4.0}), config(kInf, dt, 3));
  double mean = 0.0;
  std::vector<double> d1(3);
  for (int n = 0; n < 3; ++n) mean += (d1[n] = oracle_d1(p[2 * n], p[2 * n + 1])) / 3.0;
  for (int n = 0; n < 3; ++n) EXPECT_NEAR(next.particle(n)[0], 0.4 + dt * (mean - d1[n]), 1e-13);
}

TEST(LangevinStep, QuadraticContraction) {
  const auto quad = Potential::custom(2, 100.0, {}, {{0, 0.0, 2, 0.5}, {1, 0.0, 2, 0.5}});
  const double dt = 0.05;
  auto ens = make({1.5, -0.7, -3.0, 2.0}, 100.0);
  for (int k = 1; k <= 20; ++k) {
    ens = langevin_step(ens, quad, config(kInf, dt, 2, DynamicsMode::langevin));
    const double f = std::pow(1.0 - dt, k);
    ASSERT_NEAR(ens.particle(0)[0], 1.5 * f, 1e-12);
    ASSERT_NEAR(ens.particle(1)[1], 2.0 * f, 1e-12);
  }
}

TEST(ZeroBandwidthStep, SineQuadraticReactionCoordinateIsBrownian) {
  const auto pot = Potential::sine_quadratic(1000.0);
  const std::size_t n = 20000;
  const int k = 40;
  const double beta = 1.0, dt = 0.01;
  auto c = config(beta, dt, n, DynamicsMode::zero_bandwidth);
  c.n_steps = k;
  const auto start = sample_initial({InitialKind::gaussian, {0.0, 0.0}, 0.5}, n, 5, pot);
  auto ens = start;
  Integrator(pot, std::nullopt, c).run(ens, k);
  double s = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = ens.x1(i) - start.x1(i);
    s += d;
    s2 += d * d;
  }
  const double var = s2 / n - (s / n) * (s / n);
  const double expect = 2.0 / beta * k * dt;
  EXPECT_NEAR(var, expect, 4.0 * expect * std::sqrt(2.0 / n));
}

// One-sample Kolmogorov-Smirnov test at the 1% level.
TEST(ZeroBandwidthStep, SeparablePotentialGivesDiffusiveMarginal) {
  const auto pot = Potential::custom(2, 1000.0, {{-3.0, {0.0, 0.0}, {kInf, 0.7}}},
                                     {{0, 0.0, 4, 0.5}, {1, 0.0, 2, 1.0}});
  const std::size_t n = 4000;
  const int steps = 50;
  const double beta = 2.0, dt = 0.02;
  auto c = config(beta, dt, n, DynamicsMode::zero_bandwidth);
  auto ens = sample_initial({InitialKind::gaussian, {0.0, 0.0}, 0.0}, n, 8, pot);
  Integrator(pot, std::nullopt, c).run(ens, steps);
  std::vector<double> x = ens.reaction_coordinates();
  std::sort(x.begin(), x.end());
  const double sd = std::sqrt(2.0 / beta * steps * dt);
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double cdf = 0.5 * std::erfc(-x[i] / (sd * std::sqrt(2.0)));
    ks = std::max({ks, std::abs(cdf - double(i) / n), std::abs(cdf - double(i + 1) / n)});
  }
  EXPECT_LT(ks, 1.628 / std::sqrt(static_cast<double>(n)));
}

TEST(Integrator, DeterministicAndThreadIndependent) {
  const auto pot = Potential::v1();
  const Kernel k({0.0, 0.05, 4.0});
  auto c = config(10.0, 0.01, 300);
  const auto start = sample_initial({}, 300, 21, pot);
  auto a = start, b = start, t = start;
  Integrator(pot, k, c).run(a, 100);
  Integrator(pot, k, c).run(b, 100);
  c.threads = 4;
  Integrator(pot, k, c).run(t, 100);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, t);
  EXPECT_EQ(a.step, 100u);
  EXPECT_NEAR(a.time, 1.0, 1e-12);
}

TEST(Integrator, ResumedRunMatchesSingleRun) {
  const auto pot = Potential::v2();
  const Kernel k({0.0, 0.01, 4.0});
  const auto c = config(10.0, 0.01, 100);
  const auto start = sample_initial({}, 100, 4, pot);
  auto whole = start, split = start;
  Integrator(pot, k, c).run(whole, 60);
  Integrator first(pot, k, c);
  first.run(split, 25);
  Integrator(pot, k, c).run(split, 35);
  EXPECT_EQ(whole, split);
}

TEST(Integrator, ExchangeablePermutation) {
  const auto pot = Potential::v1();
  const Kernel k({0.0, 0.05, 4.0});
  const std::size_t n = 64;
  const auto c = config(10.0, 0.01, n);
  const auto start = sample_initial({}, n, 6, pot);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 gen(1);
  std::shuffle(perm.begin(), perm.end(), gen);
  auto permuted = start;
  for (std::size_t i = 0; i < n; ++i) {
    permuted.streams[i] = start.streams[perm[i]];
    permuted.positions[2 * i] = start.positions[2 * perm[i]];
    permuted.positions[2 * i + 1] = start.positions[2 * perm[i] + 1];
  }
  auto a = start;
  Integrator(pot, k, c).run(a, 50);
  Integrator(pot, k, c).run(permuted, 50);
  for (std::size_t i = 0; i < n; ++i) {
    // summation order inside a bin follows particle index, so allow rounding
    ASSERT_NEAR(permuted.positions[2 * i], a.positions[2 * perm[i]], 1e-9);
    ASSERT_NEAR(permuted.positions[2 * i + 1], a.positions[2 * perm[i] + 1], 1e-9);
  }
}

TEST(Integrator, NonFiniteDriftReportsParticle) {
  const auto pot = Potential::v1();
  auto ens = make({0.0, 0.0, 0.5, 1e120, -1.0, 0.0}, 4.0);
  try {
    Integrator(pot, Kernel({0.0, 0.05, 4.0}), config(10.0, 0.01, 3)).step(ens);
    FAIL() << "expected StepError";
  } catch (const StepError& e) {
    EXPECT_EQ(e.particle(), 1u);
  }
}

TEST(Integrator, RejectsInvalidConfig) {
  const auto pot = Potential::v1();
  EXPECT_THROW(Integrator(pot, std::nullopt, config(10.0, 0.01, 1)), ConfigError);
  EXPECT_THROW(Integrator(pot, Kernel({0.0, 0.01, 1.0}), config(10.0, 0.01, 1)), ConfigError);
  EXPECT_THROW(Integrator(pot, std::nullopt, config(-1.0, 0.01, 1, DynamicsMode::langevin)), ConfigError);
  EXPECT_THROW(Integrator(pot, std::nullopt, config(1.0, -0.01, 1, DynamicsMode::langevin)), ConfigError);
  EXPECT_THROW(parse_mode("metadynamics"), ConfigError);
}

TEST(EstimateProfile, UsesMeanForceSamples) {
  const auto pot = Potential::v1();
  const auto ens = sample_initial({InitialKind::uniform_x1, {0.0, 0.0}, 0.2}, 500, 2, pot);
  const auto d1 = mean_force_samples(ens, pot);
  for (std::size_t i = 0; i < ens.size(); ++i) ASSERT_EQ(d1[i], pot.d1(ens.particle(i)));
  const Kernel k({0.0, 0.1, 4.0});
  const PeriodicGrid grid{4.0, 50};
  const auto p = estimate_profile(ens, pot, k, grid);
  const auto x = ens.reaction_coordinates();
  const auto q = nw_profile_naive(x, d1, k, grid);
  for (std::size_t i = 0; i < grid.size; ++i) ASSERT_NEAR(p.values[i], q.values[i], 1e-10);
}

}  // namespace
}  // namespace abf
