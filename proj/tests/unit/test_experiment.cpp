#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "abf/config.hpp"
#include "abf/csv.hpp"
#include "abf/error.hpp"
#include "abf/experiment.hpp"
#include "abf/reference.hpp"

namespace abf {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("abf_experiment_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(Experiment, ZeroStepRunReportsInitialEstimatorError) {
  auto cfg = preset("v1-abf");
  cfg.sim.n_steps = 0;
  cfg.seeds = {1};
  const auto dir = scratch("zero");
  const auto report = run_experiment(cfg, dir);
  EXPECT_TRUE(std::isfinite(report.get("l1_error")));
  EXPECT_EQ(slurp(dir / "particles_final.csv"), slurp(dir / "particles_initial.csv"));
  EXPECT_TRUE(fs::exists(dir / "force_profile.csv"));
  EXPECT_TRUE(fs::exists(dir / "summary.txt"));
  fs::remove_all(dir);
}

TEST(Experiment, ConfigEchoReproducesOutputsBitForBit) {
  auto cfg = preset("v1-abf");
  cfg.sim.n_steps = 40;
  cfg.sim.n_particles = 200;
  cfg.seeds = {3};
  cfg.snapshot_every = 10;
  const auto a = scratch("echo_a"), b = scratch("echo_b");
  run_experiment(cfg, a);
  run_experiment(parse_config(a / "config.txt"), b);
  for (const auto* f : {"force_profile.csv", "particles_final.csv", "trajectory.csv", "config.txt"})
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Experiment, ConcurrentPresetsDoNotInterfere) {
  auto cfg = preset("v1-langevin");
  cfg.sim.n_steps = 30;
  const auto solo = run_experiment(cfg);
  Report r1, r2;
  std::thread t1([&] { r1 = run_experiment(cfg); });
  std::thread t2([&] {
    auto other = preset("v2-short");
    other.sim.n_steps = 20;
    other.sim.n_particles = 100;
    other.seeds = {1};
    r2 = run_experiment(other);
  });
  t1.join();
  t2.join();
  EXPECT_EQ(r1.get("well_crossing_fraction"), solo.get("well_crossing_fraction"));
  EXPECT_TRUE(r2.has("l1_error"));
}

TEST(Experiment, SweepWritesSeriesAndSlope) {
  auto cfg = preset("sweep-n");
  cfg.sim.n_steps = 20;
  cfg.seeds = {1, 2};
  cfg.sweep_n_values = {100, 200, 400};
  cfg.kernel.epsilon = 0.1;
  const auto dir = scratch("sweep");
  const auto report = run_experiment(cfg, dir);
  EXPECT_TRUE(report.has("slope"));
  const auto series = slurp(dir / "series.csv");
  EXPECT_EQ(series.rfind("# abf-csv v1 sweep_n\nn_particles,mean_l1_error", 0), 0u);
  fs::remove_all(dir);
}

TEST(Experiment, UnknownExperimentRejected) {
  auto cfg = preset("v1-abf");
  cfg.experiment = "nope";
  EXPECT_THROW(run_experiment(cfg), ConfigError);
}

TEST(Report, ChecksAndText) {
  Report r;
  r.experiment = "x";
  r.set("a", 1.0);
  r.set("a", 2.0);
  r.check("a", 2.0, 0.0, 1.0);
  EXPECT_EQ(r.get("a"), 2.0);
  EXPECT_FALSE(r.passed());
  EXPECT_THROW(r.get("b"), UsageError);
  EXPECT_NE(r.to_text().find("check.a = FAIL"), std::string::npos);
}

}  // namespace
}  // namespace abf
