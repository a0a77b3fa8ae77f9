// abf: run presets, tabulate exact mean forces, evolve the Fokker-Planck oracle.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 numerical failure,
// 4 a --check band failed.

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abf/config.hpp"
#include "abf/csv.hpp"
#include "abf/error.hpp"
#include "abf/experiment.hpp"
#include "abf/pde.hpp"
#include "abf/reference.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kNumericalExit = 3;
constexpr int kCheckExit = 4;

struct RunArgs {
  std::vector<std::string> positional;  // preset name and key=value overrides
  std::string preset;
  std::string config_file;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  std::size_t seeds = 0;
  std::uint64_t steps = 0;
  bool steps_given = false;
  std::string n_values;
  std::string eps_values;
  bool check = false;
};

int do_run(RunArgs a) {
  for (const auto& item : a.positional) {
    if (item.find('=') != std::string::npos)
      a.overrides.push_back(item);
    else if (a.preset.empty())
      a.preset = item;
    else
      throw abf::UsageError("unexpected argument '" + item + "'");
  }
  abf::ExperimentConfig cfg;
  if (!a.config_file.empty()) {
    cfg = abf::parse_config(a.config_file);
    if (!a.preset.empty() && a.preset != cfg.experiment)
      throw abf::UsageError("preset '" + a.preset + "' conflicts with experiment '" + cfg.experiment +
                            "' in " + a.config_file);
  } else {
    if (a.preset.empty()) throw abf::UsageError("run needs a preset name or --config");
    cfg = abf::preset(a.preset);
  }
  for (const auto& kv : a.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw abf::ConfigError("override '" + kv + "' is not key=value");
    abf::apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!a.n_values.empty()) abf::apply_setting(cfg, "sweep.n_values", a.n_values);
  if (!a.eps_values.empty()) abf::apply_setting(cfg, "sweep.eps_values", a.eps_values);
  if (a.steps_given) cfg.sim.n_steps = a.steps;
  if (a.seed > 0 || a.seeds > 0) {
    const std::uint64_t first = a.seed > 0 ? a.seed : 1;
    const std::size_t count = a.seeds > 0 ? a.seeds : 1;
    cfg.seeds.clear();
    for (std::size_t i = 0; i < count; ++i) cfg.seeds.push_back(first + i);
  }
  cfg.sim.seed = cfg.seeds.front();
  cfg.kernel.period = cfg.make_potential().period();
  abf::validate(cfg);

  const auto report = abf::run_experiment(cfg, a.out_dir);
  std::cout << report.to_text();
  return a.check && !report.passed() ? kCheckExit : 0;
}

int do_reference(const std::string& potential, double beta, std::size_t grid_points, double y_max,
                 std::size_t n_quad) {
  const auto pot = abf::Potential::by_name(potential);
  const abf::PeriodicGrid grid{pot.period(), grid_points};
  const abf::QuadratureOptions opts{y_max, n_quad};
  const auto force = abf::mean_force(grid, pot, beta, opts);
  const auto energy = abf::free_energy(grid, pot, beta, opts);
  std::cout << "z,A,Aprime\n";
  for (std::size_t i = 0; i < grid.size; ++i)
    std::cout << abf::format_double(grid.node(i)) << ',' << abf::format_double(energy.values[i]) << ','
              << abf::format_double(force.values[i]) << '\n';
  return 0;
}

int do_pde(const std::string& potential, std::size_t nx, std::size_t ny, double y_max, double beta, double t,
           double dt, double alpha, double epsilon, bool unbiased) {
  const auto pot = abf::Potential::by_name(potential);
  const double period = pot.period();
  const double k = 2.0 * std::numbers::pi / period;
  auto rho = abf::GridDensity::from_function(nx, ny, period, y_max, [&](double x, double y) {
    return (1.0 + std::cos(k * x)) * std::exp(-0.5 * y * y / 0.09);
  });
  abf::FokkerPlanckSolver solver(pot, {alpha, epsilon, period}, beta, nx, ny, y_max, !unbiased);
  if (!(dt > 0.0)) dt = 0.5 * solver.stable_dt(rho);
  solver.advance(rho, t, dt);
  std::cout << "x1,x2,p\n";
  for (std::size_t i = 0; i < rho.nx(); ++i)
    for (std::size_t j = 0; j < rho.ny(); ++j)
      std::cout << abf::format_double(rho.x1(i)) << ',' << abf::format_double(rho.y(j)) << ','
                << abf::format_double(rho.at(i, j)) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive biasing force particle simulator"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a preset experiment");
  run_cmd->add_option("preset", run.positional,
                      "Preset name (v1-abf, v1-langevin, sweep-n, sweep-eps, eps-large, v2-short, v2-long, "
                      "bias-demo, pde-xval) followed by key=value overrides");
  run_cmd->add_option("--config", run.config_file, "Config file (key = value lines)");
  run_cmd->add_option("--out", run.out_dir, "Output directory");
  run_cmd->add_option("--seed", run.seed, "First seed");
  run_cmd->add_option("--seeds", run.seeds, "Number of consecutive seeds");
  auto* steps_opt = run_cmd->add_option("--steps", run.steps, "Override the number of steps");
  run_cmd->add_option("--n-values", run.n_values, "Particle counts for sweep-n (comma separated)");
  run_cmd->add_option("--eps-values", run.eps_values, "Bandwidths for sweep-eps (comma separated)");
  run_cmd->add_flag("--check", run.check, "Exit with status 4 if an acceptance band fails");
  run_cmd->add_option("--set", run.overrides, "Config override key=value (repeatable)");

  std::string potential = "v1";
  double beta = 10.0;
  std::size_t grid_points = 200;
  double y_max = 6.0;
  std::size_t n_quad = 200;
  auto* ref_cmd = app.add_subcommand("reference", "Tabulate the exact free energy and mean force");
  ref_cmd->add_option("--potential", potential, "v1, v2 or sine_quadratic")->capture_default_str();
  ref_cmd->add_option("--beta", beta)->capture_default_str();
  ref_cmd->add_option("--grid", grid_points)->capture_default_str();
  ref_cmd->add_option("--y-max", y_max)->capture_default_str();
  ref_cmd->add_option("--n-quad", n_quad)->capture_default_str();

  std::size_t nx = 128, ny = 128;
  double pde_y_max = 4.0, t = 1.0, dt = 0.0, alpha = 0.0, epsilon = 0.05;
  bool unbiased = false;
  double pde_beta = 1.0;
  auto* pde_cmd = app.add_subcommand("pde", "Evolve the regularized Fokker-Planck equation, print the density");
  pde_cmd->add_option("--potential", potential)->capture_default_str();
  pde_cmd->add_option("--nx", nx)->capture_default_str();
  pde_cmd->add_option("--ny", ny)->capture_default_str();
  pde_cmd->add_option("--y-max", pde_y_max)->capture_default_str();
  pde_cmd->add_option("--beta", pde_beta)->capture_default_str();
  pde_cmd->add_option("--t", t)->capture_default_str();
  pde_cmd->add_option("--dt", dt, "Time step (0 = half the stability bound)")->capture_default_str();
  pde_cmd->add_option("--alpha", alpha)->capture_default_str();
  pde_cmd->add_option("--epsilon", epsilon)->capture_default_str();
  pde_cmd->add_flag("--unbiased", unbiased, "Drop the adaptive force term");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    run.steps_given = steps_opt->count() > 0;
    if (*run_cmd) return do_run(run);
    if (*ref_cmd) return do_reference(potential, beta, grid_points, y_max, n_quad);
    if (*pde_cmd) return do_pde(potential, nx, ny, pde_y_max, pde_beta, t, dt, alpha, epsilon, unbiased);
  } catch (const abf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const abf::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const abf::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
