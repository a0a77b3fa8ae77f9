#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "abf/error.hpp"
#include "abf/metrics.hpp"

namespace abf {
namespace {

MeanForceProfile profile(const PeriodicGrid& g, std::vector<double> v) { return {g, std::move(v)}; }

TEST(GridL1, HandValues) {
  const PeriodicGrid g{4.0, 10};
  const auto f = profile(g, std::vector<double>(10, 1.0));
  EXPECT_EQ(grid_l1(f, f), 0.0);
  const auto h = profile(g, std::vector<double>(10, -1.5));
  EXPECT_DOUBLE_EQ(grid_l1(f, h), 2.5 * 4.0);
  EXPECT_DOUBLE_EQ(grid_sup(f, h), 2.5);
  EXPECT_DOUBLE_EQ(grid_l1_norm(h), 6.0);
  EXPECT_THROW(grid_l1(f, profile({4.0, 11}, std::vector<double>(11))), UsageError);
}

TEST(GridL1, MetricAxiomsOnRandomProfiles) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> n(0.0, 3.0);
  const PeriodicGrid g{4.0, 37};
  auto draw = [&] {
    std::vector<double> v(g.size);
    for (double& x : v) x = n(gen);
    return profile(g, v);
  };
  for (int t = 0; t < 500; ++t) {
    const auto a = draw(), b = draw(), c = draw();
    ASSERT_GE(grid_l1(a, b), 0.0);
    ASSERT_EQ(grid_l1(a, b), grid_l1(b, a));
    ASSERT_LE(grid_l1(a, c), grid_l1(a, b) + grid_l1(b, c) + 1e-12);
  }
}

ConvergenceSeries series(const std::vector<double>& p, double (*law)(double)) {
  ConvergenceSeries s;
  for (double x : p) s.points.emplace_back(x, law(x));
  return s;
}

TEST(LoglogSlope, ExactLaws) {
  const std::vector<double> n{125, 250, 500, 1000, 2000};
  EXPECT_NEAR(loglog_slope(series(n, [](double x) { return 3.0 / std::sqrt(x); })), -0.5, 1e-12);
  EXPECT_NEAR(loglog_slope(series(n, [](double) { return 0.7; })), 0.0, 1e-12);
}

TEST(LoglogSlope, ScaleInvariant) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int t = 0; t < 100; ++t) {
    ConvergenceSeries a, b;
    const double c = u(gen);
    for (double x : {1.0, 2.0, 4.0, 8.0, 16.0}) {
      const double e = u(gen);
      a.points.emplace_back(x, e);
      b.points.emplace_back(x, c * e);
    }
    ASSERT_NEAR(loglog_slope(a), loglog_slope(b), 1e-12);
  }
}

TEST(LoglogSlope, RejectsBadSeries) {
  EXPECT_THROW(loglog_slope({SeriesKind::n_particles, {{1, 1}, {2, 1}}}), UsageError);
  EXPECT_THROW(loglog_slope({SeriesKind::n_particles, {{1, 1}, {2, 0}, {3, 1}}}), UsageError);
  EXPECT_THROW(loglog_slope({SeriesKind::n_particles, {{1, 1}, {1, 2}, {3, 1}}}), UsageError);
  EXPECT_THROW(loglog_slope({SeriesKind::n_particles, {{-1, 1}, {2, 2}, {3, 1}}}), UsageError);
}

TEST(LoglogSlope, UnsaturatedFitDropsFloor) {
  ConvergenceSeries s;
  for (double n : {125.0, 250.0, 500.0, 1000.0, 2000.0, 4000.0}) s.points.emplace_back(n, n <= 1000 ? 1.0 / std::sqrt(n) : 1.0 / std::sqrt(1000.0));
  const auto fit = loglog_slope_unsaturated(s);
  EXPECT_NEAR(fit.slope, -0.5, 1e-12);
  EXPECT_EQ(fit.used, 4u);
}

ParticleEnsemble two_d(std::vector<double> xy, double period) {
  ParticleEnsemble e;
  e.period = period;
  e.positions = std::move(xy);
  e.streams.assign(e.positions.size() / 2, 0);
  return e;
}

TEST(WellCrossing, StationaryAndTranslated) {
  const std::vector<std::vector<double>> wells{{-1.0, 0.0}, {1.0, 0.0}};
  const auto a = two_d({-1.0, 0.1, 0.9, -0.1, -1.2, 0.0}, 4.0);
  EXPECT_EQ(well_crossing_fraction(a, a, wells, 0.5), 0.0);
  auto b = a;
  for (std::size_t n = 0; n < b.size(); ++n) b.positions[2 * n] = wrap(b.positions[2 * n] + 2.0, 4.0);
  EXPECT_EQ(well_crossing_fraction(a, b, wells, 0.5), 1.0);
  EXPECT_THROW(well_crossing_fraction(two_d({0.0, 0.0}, 4.0), a, wells, 0.5), UsageError);
}

TEST(WellCrossing, TranslationInvariant) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(-0.3, 0.3), s(-10.0, 10.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> xi, xf;
    for (int n = 0; n < 20; ++n) {
      const double w = n % 2 ? 1.0 : -1.0;
      xi.insert(xi.end(), {w + u(gen), u(gen)});
      xf.insert(xf.end(), {wrap(4.0 * u(gen) * 3.0, 4.0), u(gen)});
    }
    const double dx = s(gen), dy = s(gen);
    auto shift = [&](std::vector<double> v) {
      for (std::size_t i = 0; i < v.size(); i += 2) {
        v[i] = wrap(v[i] + dx, 4.0);
        v[i + 1] += dy;
      }
      return v;
    };
    const std::vector<std::vector<double>> wells{{-1.0, 0.0}, {1.0, 0.0}};
    const std::vector<std::vector<double>> moved{{wrap(-1.0 + dx, 4.0), dy}, {wrap(1.0 + dx, 4.0), dy}};
    ASSERT_EQ(well_crossing_fraction(two_d(xi, 4.0), two_d(xf, 4.0), wells, 0.5),
              well_crossing_fraction(two_d(shift(xi), 4.0), two_d(shift(xf), 4.0), moved, 0.5));
  }
}

TEST(WellOccupancy, CountsNearestWell) {
  const auto e = two_d({-1.0, 0.0, -0.8, 0.2, 1.1, 0.0, 1.9, 0.0}, 4.0);
  const auto occ = well_occupancy(e, {{-1.0, 0.0}, {1.0, 0.0}});
  EXPECT_DOUBLE_EQ(occ[0], 0.5);
  EXPECT_DOUBLE_EQ(occ[1], 0.5);
}

TEST(ConditionalMean, DeterministicRelation) {
  const PeriodicGrid g{1.0, 20};
  std::vector<double> x, y;
  for (int i = 0; i < 20000; ++i) {
    x.push_back(-0.5 + (i + 0.5) / 20000.0);
    y.push_back(std::sin(2.0 * std::numbers::pi * x.back()));
  }
  const auto p = conditional_mean_profile(x, y, g);
  EXPECT_EQ(p.missing, 0u);
  for (std::size_t i = 0; i < g.size; ++i)
    ASSERT_NEAR(p.values[i], std::sin(2.0 * std::numbers::pi * g.node(i)), g.spacing() * 2.0 * std::numbers::pi);
}

TEST(ConditionalMean, IndependentNoiseNearZero) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::normal_distribution<double> n;
  std::vector<double> x(50000), y(50000);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = u(gen);
    y[i] = n(gen);
  }
  const auto p = conditional_mean_profile(x, y, {1.0, 20});
  for (std::size_t i = 0; i < 20; ++i) ASSERT_LE(std::abs(p.values[i]), 4.0 / std::sqrt(double(p.counts[i])));
}

TEST(ConditionalMean, FlagsEmptyBins) {
  const std::vector<double> x{0.13, 0.16}, y{1.0, 3.0};
  const auto p = conditional_mean_profile(x, y, {1.0, 10});
  EXPECT_EQ(p.missing, 9u);
  EXPECT_DOUBLE_EQ(p.values[6], 2.0);
  EXPECT_TRUE(std::isnan(p.values[0]));
}

TEST(FourierMode, RecoversCoefficients) {
  const PeriodicGrid g{1.0, 20};
  std::vector<double> v(20);
  for (std::size_t i = 0; i < 20; ++i)
    v[i] = 0.3 + 0.8 * std::sin(2.0 * std::numbers::pi * g.node(i)) - 0.6 * std::cos(2.0 * std::numbers::pi * g.node(i));
  const auto m = fourier_mode(g, v, 1);
  EXPECT_NEAR(m.sin_coeff, 0.8, 1e-12);
  EXPECT_NEAR(m.cos_coeff, -0.6, 1e-12);
  EXPECT_NEAR(m.amplitude(), 1.0, 1e-12);
}

TEST(Histogram, IntegratesToOne) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(-7.0, 7.0);
  std::vector<double> x(1000);
  for (double& v : x) v = u(gen);
  const PeriodicGrid g{4.0, 8};
  double s = 0.0;
  for (double v : histogram_density(x, g)) s += v * g.spacing();
  EXPECT_NEAR(s, 1.0, 1e-14);
}

}  // namespace
}  // namespace abf
