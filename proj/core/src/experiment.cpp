#include "abf/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "abf/csv.hpp"
#include "abf/dynamics.hpp"
#include "abf/error.hpp"
#include "abf/estimator.hpp"
#include "abf/metrics.hpp"
#include "abf/pde.hpp"
#include "abf/reference.hpp"

namespace abf {

void Report::set(const std::string& name, double value) {
  for (auto& [k, v] : metrics)
    if (k == name) {
      v = value;
      return;
    }
  metrics.emplace_back(name, value);
}

bool Report::has(const std::string& name) const {
  return std::any_of(metrics.begin(), metrics.end(), [&](const auto& m) { return m.first == name; });
}

double Report::get(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  throw UsageError("report has no metric '" + name + "'");
}

void Report::check(const std::string& name, double value, double lo, double hi) {
  checks.push_back({name, value, lo, hi, value >= lo && value <= hi});
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << "experiment = " << experiment << '\n';
  for (const auto& [k, v] : metrics) out << k << " = " << format_double(v) << '\n';
  for (const auto& c : checks)
    out << "check." << c.name << " = " << (c.pass ? "PASS" : "FAIL") << " (" << format_double(c.value) << " in ["
        << format_double(c.lo) << ", " << format_double(c.hi) << "])\n";
  return out.str();
}

namespace {

namespace fs = std::filesystem;

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::vector<double>>& v_wells() {
  static const std::vector<std::vector<double>> wells{{-1.0, 0.0}, {1.0, 0.0}};
  return wells;
}

class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {
    if (!dir_.empty()) fs::create_directories(dir_);
  }
  bool enabled() const { return !dir_.empty(); }
  fs::path path(const std::string& name) const { return dir_ / name; }
  Outputs sub(const std::string& name) const { return Outputs(enabled() ? dir_ / name : fs::path{}); }

 private:
  fs::path dir_;
};

struct RunResult {
  ParticleEnsemble initial;
  ParticleEnsemble final_state;
  MeanForceProfile estimate;
  double seconds = 0.0;
  std::uint64_t empty_windows = 0;
};

struct RunOptions {
  std::size_t n_particles = 0;
  std::uint64_t seed = 1;
  std::optional<double> epsilon;
  std::optional<DynamicsMode> mode;
  Integrator::Observer observer;
  const Outputs* trajectory = nullptr;
};

KernelSpec kernel_spec(const ExperimentConfig& cfg, const Potential& pot, std::optional<double> eps = {}) {
  KernelSpec spec = cfg.kernel;
  spec.period = pot.period();
  if (eps) spec.epsilon = *eps;
  return spec;
}

RunResult simulate(const ExperimentConfig& cfg, const Potential& pot, const RunOptions& opt) {
  SimulationConfig sim = cfg.sim;
  sim.n_particles = opt.n_particles ? opt.n_particles : cfg.sim.n_particles;
  sim.seed = opt.seed;
  if (opt.mode) sim.mode = *opt.mode;
  const Kernel kernel(kernel_spec(cfg, pot, opt.epsilon));

  RunResult r;
  r.initial = sample_initial(sim.init, sim.n_particles, sim.seed, pot);
  ParticleEnsemble ens = r.initial;
  Integrator integrator(pot, sim.mode == DynamicsMode::abf ? std::optional<Kernel>(kernel) : std::nullopt, sim);

  std::unique_ptr<CsvWriter> traj;
  if (opt.trajectory && opt.trajectory->enabled() && cfg.snapshot_every > 0) {
    traj = std::make_unique<CsvWriter>(opt.trajectory->path("trajectory.csv"), "particles",
                                       particle_columns(ens.dimension));
    append_particles(*traj, ens);
  }
  const auto t0 = std::chrono::steady_clock::now();
  integrator.run(ens, sim.n_steps, [&](const ParticleEnsemble& e) {
    if (traj && e.step % cfg.snapshot_every == 0) append_particles(*traj, e);
    if (opt.observer) opt.observer(e);
  });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.empty_windows = integrator.empty_windows();
  r.estimate = estimate_profile(ens, pot, kernel, {pot.period(), cfg.grid_points});
  r.final_state = std::move(ens);
  return r;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

std::string seed_label(std::uint64_t seed) { return "seed-" + std::to_string(seed); }

// Shared by v1-abf, eps-large and v2-short: one ABF run per seed, L1 error vs the exact mean force.
void run_force_accuracy(const ExperimentConfig& cfg, const Outputs& out, Report& report) {
  const Potential pot = cfg.make_potential();
  const PeriodicGrid grid{pot.period(), cfg.grid_points};
  const auto exact = mean_force(grid, pot, cfg.sim.beta, cfg.quadrature);
  report.set("reference_l1_norm", grid_l1_norm(exact));

  std::vector<double> errors, occ_left, occ_right, seconds;
  for (std::uint64_t seed : cfg.seeds) {
    const Outputs dir = cfg.seeds.size() > 1 ? out.sub(seed_label(seed)) : out;
    RunOptions opt;
    opt.seed = seed;
    opt.trajectory = &dir;
    const auto r = simulate(cfg, pot, opt);
    const double err = grid_l1(r.estimate, exact);
    errors.push_back(err);
    seconds.push_back(r.seconds);
    const auto occ = well_occupancy(r.final_state, v_wells());
    occ_left.push_back(occ[0]);
    occ_right.push_back(occ[1]);
    report.set("l1_error." + seed_label(seed), err);
    report.set("empty_grid_nodes." + seed_label(seed), static_cast<double>(r.estimate.empty_nodes));
    if (dir.enabled()) {
      write_profiles(dir.path("force_profile.csv"), "force_profile", {"estimate", "reference"},
                     {&r.estimate, &exact});
      write_particles(dir.path("particles_initial.csv"), r.initial);
      write_particles(dir.path("particles_final.csv"), r.final_state);
    }
  }
  report.set("l1_error", mean(errors));
  report.set("l1_error_std", stddev(errors));
  report.set("well_occupancy_left", mean(occ_left));
  report.set("well_occupancy_right", mean(occ_right));
  report.set("seconds_per_seed", mean(seconds));
}

void run_v1_abf(const ExperimentConfig& cfg, const Outputs& out, Report& report) {
  run_force_accuracy(cfg, out, report);
  report.check("l1_error", report.get("l1_error"), 0.01, 0.20);
  report.check("both_wells_populated",
               std::min(report.get("well_occupancy_left"), report.get("well_occupancy_right")), 0.20, 1.0);
}

void run_v1_langevin(const ExperimentConfig& cfg, const Outputs& out, Report& report) {
  const Potential pot = cfg.make_potential();
  std::vector<double> fractions;
  for (std::uint64_t seed : cfg.seeds) {
    const Outputs dir = cfg.seeds.size() > 1 ? out.sub(seed_label(seed)) : out;
    RunOptions opt;
    opt.seed = seed;
    opt.trajectory = &dir;
    const auto r = simulate(cfg, pot, opt);
    const double f = well_crossing_fraction(r.initial, r.final_state, v_wells(), 0.75);
    fractions.push_back(f);
    report.set("well_crossing_fraction." + seed_label(seed), f);
    report.set("seconds." + seed_label(seed), r.seconds);
    if (dir.enabled()) {
      write_particles(dir.path("particles_initial.csv"), r.initial);
      write_particles(dir.path("particles_final.csv"), r.final_state);
    }
  }
  report.set("well_crossing_fraction", mean(fractions));
  report.check("well_crossing_fraction", report.get("well_crossing_fraction"), 0.0, 0.05);
}

void run_sweep_n(const ExperimentConfig& cfg, const Outputs& out, Report& report) {
  const Potential pot = cfg.make_potential();
  const PeriodicGrid grid{pot.period(), cfg.grid_points};
  const auto exact = mean_force(grid, pot, cfg.sim.beta, cfg.quadrature);
  std::vector<std::size_t> ns = cfg.sweep_n_values;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  ConvergenceSeries series{SeriesKind::n_particles, {}};
  std::unique_ptr<CsvWriter> csv;
  if (out.enabled())
    csv = std::make_unique<CsvWriter>(out.path("series.csv"), "sweep_n",
                                      std::vector<std::string>{"n_particles", "mean_l1_error", "std_l1_error", "seeds"});
  for (std::size_t n : ns) {
    std::vector<double> errors;
    for (std::uint64_t seed : cfg.seeds) {
      RunOptions opt;
      opt.seed = seed;
      opt.n_particles = n;
      errors.push_back(grid_l1(simulate(cfg, pot, opt).estimate, exact));
    }
    const double m = mean(errors);
    series.points.emplace_back(static_cast<double>(n), m);
    report.set("l1_error.n" + std::to_string(n), m);
    if (csv) csv->row({static_cast<double>(n), m, stddev(errors), static_cast<double>(errors.size())});
  }
  if (series.points.size() >= 3) {
    report.set("slope", loglog_slope(series));
    const auto fit = loglog_slope_unsaturated(series);
    report.set("slope_unsaturated", fit.slope);
    report.set("slope_points_used", static_cast<double>(fit.used));
    report.check("slope", report.get("slope"), -0.85, -0.35);
  }
}

void run_sweep_eps(const ExperimentConfig& cfg, const Outputs& out, Report& report) {
  const Potential pot = cfg.make_potential();
  const PeriodicGrid grid{pot.period(), cfg.grid_points};
  const auto exact = mean_force(grid, pot, cfg.sim.beta, cfg.quadrature);
  std::unique_ptr<CsvWriter> csv;
  if (out.enabled())
    csv = std::make_unique<CsvWriter>(out.path("series.csv"), "sweep_eps",
                                      std::vector<std::string>{"epsilon", "mean_l1_error", "std_l1_error", "seeds"});
  std::map<double, double> by_eps;
  for (double eps : cfg.sweep_eps_values) {
    std::vector<double> errors;
    for (std::uint64_t seed : cfg.seeds) {
      RunOptions opt;
      opt.seed = seed;
      opt.epsilon = eps;
      errors.push_back(grid_l1(simulate(cfg, pot, opt).estimate, exact));
    }
    by_eps[eps] = mean(errors);
    report.set("l1_error.eps" + format_double(eps), by_eps[eps]);
    if (csv) csv->row({eps, by_eps[eps], stddev(errors), static_cast<double>(errors.size())});
  }
  if (by_eps.count(1.0) && by_eps.count(1e-2))
    report.check("large_eps_ratio", by_eps[1.0] / by_eps[1e-2], 3.0, kInf);
  if (by_eps.count(1e-4) && by_eps.count(1e-2))
    report.check("small_eps_ratio", by_eps[1e-4] / by_eps[1e-2], 1.0 + 1e-12, kInf);
}

void run_eps_large(const ExperimentConfig& cfg, const Outputs& out, Report& report) {
  run_force_accuracy(cfg, out, report);
}

void run_v2(const ExperimentConfig& cfg, const Outputs& out, Report& report, bool long_run) {
  const Potential pot = cfg.make_potential();
  const PeriodicGrid grid{pot.period(), cfg.grid_points};
  const auto exact = mean_force(grid, pot, cfg.sim.beta, cfg.quadrature);
  report.set("reference_l1_norm", grid_l1_norm(exact));
  const Kernel kernel = cfg.make_kernel();

  std::vector<std::uint64_t> marks;
  for (auto c : cfg.checkpoints)
    if (c > 0 && c < cfg.sim.n_steps) marks.push_back(c);
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

  std::vector<double> finals;
  bool improved_everywhere = true;
  for (std::uint64_t seed : cfg.seeds) {
    const Outputs dir = cfg.seeds.size() > 1 ? out.sub(seed_label(seed)) : out;
    std::vector<std::pair<std::uint64_t, double>> history;
    RunOptions opt;
    opt.seed = seed;
    opt.trajectory = &dir;
    opt.observer = [&](const ParticleEnsemble& e) {
      if (std::binary_search(marks.begin(), marks.end(), e.step))
        history.emplace_back(e.step, grid_l1(estimate_profile(e, pot, kernel, grid), exact));
    };
    const auto r = simulate(cfg, pot, opt);
    const double err = grid_l1(r.estimate, exact);
    history.emplace_back(r.final_state.step, err);
    finals.push_back(err);
    report.set("l1_error." + seed_label(seed), err);
    for (const auto& [step, e] : history)
      report.set("l1_error." + seed_label(seed) + ".step" + std::to_string(step), e);
    if (long_run && history.size() > 1 && !(history.back().second < history.front().second))
      improved_everywhere = false;
    if (dir.enabled()) {
      CsvWriter h(dir.path("error_history.csv"), "error_history", {"step", "time", "l1_error"});
      for (const auto& [step, e] : history) h.row({static_cast<double>(step), static_cast<double>(step) * cfg.sim.dt, e});
      write_profiles(dir.path("force_profile.csv"), "force_profile", {"estimate", "reference"}, {&r.estimate, &exact});
      write_particles(dir.path("particles_final.csv"), r.final_state);
    }
  }
  report.set("l1_error", mean(finals));
  if (!long_run) {
    report.check("l1_error", report.get("l1_error"), 0.2, 0.8);
  } else {
    if (!marks.empty()) report.check("improves_on_every_seed", improved_everywhere ? 1.0 : 0.0, 1.0, 1.0);
    if (cfg.sim.n_steps >= 2000000) report.check("l1_error", *std::max_element(finals.begin(), finals.end()), 0.0, 0.25);
  }
}

void run_bias_demo(const ExperimentConfig& cfg, const Outputs& out, Report& report) {
  const Potential pot = cfg.make_potential();
  const PeriodicGrid grid{pot.period(), cfg.grid_points};
  const PeriodicGrid bins{pot.period(), cfg.demo_bins};
  const Kernel kernel = cfg.make_kernel();
  const auto exact = mean_force(grid, pot, cfg.sim.beta, cfg.quadrature);
  report.set("exact_force_sup", grid_sup(exact, MeanForceProfile{grid, std::vector<double>(grid.size, 0.0)}));
  const auto burn = static_cast<std::uint64_t>(cfg.demo_burn_in * static_cast<double>(cfg.sim.n_steps));
  const std::uint64_t seed = cfg.seeds.front();

  auto sampled = [&](DynamicsMode mode, const std::string& tag) {
    std::vector<double> xs, ys;
    MeanForceProfile averaged{grid, std::vector<double>(grid.size, 0.0), ProfileKind::particle_estimate};
    std::size_t profiles = 0;
    RunOptions opt;
    opt.seed = seed;
    opt.mode = mode;
    opt.observer = [&](const ParticleEnsemble& e) {
      if (e.step <= burn || e.step % cfg.demo_sample_every != 0) return;
      for (std::size_t n = 0; n < e.size(); ++n) {
        xs.push_back(e.particle(n)[0]);
        ys.push_back(e.particle(n)[1]);
      }
      if (mode == DynamicsMode::abf) {
        const auto p = estimate_profile(e, pot, kernel, grid);
        for (std::size_t i = 0; i < grid.size; ++i) averaged.values[i] += p.values[i];
        ++profiles;
      }
    };
    const auto r = simulate(cfg, pot, opt);
    if (xs.empty())
      for (std::size_t n = 0; n < r.final_state.size(); ++n) {
        xs.push_back(r.final_state.particle(n)[0]);
        ys.push_back(r.final_state.particle(n)[1]);
      }
    const auto cond = conditional_mean_profile(xs, ys, bins);
    const auto mode1 = fourier_mode(bins, cond.values, 1);
    report.set(tag + "_amplitude", mode1.amplitude());
    report.set(tag + "_sin_coefficient", mode1.sin_coeff);
    report.set(tag + "_samples", static_cast<double>(xs.size()));
    report.set(tag + "_seconds", r.seconds);
    if (out.enabled()) {
      CsvWriter w(out.path(tag + "_conditional_mean.csv"), "conditional_mean", {"x1", "mean_x2", "count"});
      for (std::size_t i = 0; i < bins.size; ++i)
        w.row({bins.node(i), cond.values[i], static_cast<double>(cond.counts[i])});
      write_particles(out.path(tag + "_particles_final.csv"), r.final_state);
    }
    if (mode == DynamicsMode::abf) {
      if (profiles == 0) {
        averaged = r.estimate;
        profiles = 1;
      } else {
        for (double& v : averaged.values) v /= static_cast<double>(profiles);
      }
      report.set("abf_force_sup", grid_sup(averaged, exact));
      report.set("abf_force_sup_final", grid_sup(r.estimate, exact));
      report.set("abf_force_profiles_averaged", static_cast<double>(profiles));
      if (out.enabled())
        write_profiles(out.path("force_profile.csv"), "force_profile", {"time_averaged", "final", "reference"},
                       {&averaged, &r.estimate, &exact});
    }
  };
  sampled(DynamicsMode::zero_bandwidth, "zero_bandwidth");
  sampled(DynamicsMode::abf, "abf");
  report.set("zero_bandwidth_limit_amplitude", 1.0 / (1.0 + 4.0 * std::numbers::pi * std::numbers::pi));
  report.check("zero_bandwidth_amplitude", report.get("zero_bandwidth_amplitude"), 0.0, 0.1);
  report.check("abf_amplitude", report.get("abf_amplitude"), 0.8, 1.1);
  report.check("abf_force_sup", report.get("abf_force_sup"), 0.0, 0.15);
}

// Bin-averages a fine cell-centred profile onto `coarse` cells (sizes must divide).
std::vector<double> coarsen(const std::vector<double>& fine, std::size_t coarse) {
  const std::size_t ratio = fine.size() / coarse;
  std::vector<double> out(coarse, 0.0);
  for (std::size_t i = 0; i < fine.size(); ++i) out[i / ratio] += fine[i] / static_cast<double>(ratio);
  return out;
}

double l1_density(const std::vector<double>& a, const std::vector<double>& b, double h) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s * h;
}

void run_pde_xval(const ExperimentConfig& cfg, const Outputs& out, Report& report) {
  const Potential pot = cfg.make_potential();
  if (pot.dimension() != 2) throw ConfigError("pde-xval needs a two-dimensional potential");
  const double period = pot.period();
  const double beta = cfg.sim.beta;
  const std::size_t fine = cfg.pde_nx;
  constexpr std::size_t kHistBins = 8;
  if (fine % kHistBins != 0) throw ConfigError("pde.nx must be a multiple of 8");
  const PeriodicGrid fine_grid{period, fine};
  const PeriodicGrid hist_grid{period, kHistBins};
  const double k = 2.0 * std::numbers::pi / period;

  std::vector<double> times = cfg.heat_times;
  std::sort(times.begin(), times.end());

  // exact initial marginal for particles: (1/L)(1 + cos(k x))
  std::vector<double> p0(fine);
  for (std::size_t i = 0; i < fine; ++i) p0[i] = (1.0 + std::cos(k * fine_grid.node(i))) / period;
  if (cfg.sim.init.kind != InitialKind::cosine_x1) throw ConfigError("pde-xval expects init.kind = cosine_x1");

  // particles: pooled histograms over seeds at each time
  std::vector<std::uint64_t> steps;
  for (double t : times) steps.push_back(static_cast<std::uint64_t>(std::llround(t / cfg.sim.dt)));
  std::vector<std::vector<double>> pooled(times.size());
  ExperimentConfig run_cfg = cfg;
  run_cfg.sim.n_steps = steps.empty() ? 0 : steps.back();
  for (std::uint64_t seed : cfg.seeds) {
    RunOptions opt;
    opt.seed = seed;
    opt.observer = [&](const ParticleEnsemble& e) {
      for (std::size_t m = 0; m < steps.size(); ++m)
        if (e.step == steps[m]) {
          const auto x1 = e.reaction_coordinates();
          pooled[m].insert(pooled[m].end(), x1.begin(), x1.end());
        }
    };
    simulate(run_cfg, pot, opt);
  }
  std::unique_ptr<CsvWriter> csv;
  if (out.enabled())
    csv = std::make_unique<CsvWriter>(out.path("marginals.csv"), "heat_marginals",
                                      std::vector<std::string>{"time", "x1", "heat", "particles"});
  double worst_particle = 0.0;
  for (std::size_t m = 0; m < times.size(); ++m) {
    const auto heat = coarsen(heat_solve(p0, times[m], beta, period), kHistBins);
    const auto hist = histogram_density(pooled[m], hist_grid);
    const double l1 = l1_density(hist, heat, hist_grid.spacing());
    worst_particle = std::max(worst_particle, l1);
    report.set("particle_l1.t" + format_double(times[m]), l1);
    if (csv)
      for (std::size_t i = 0; i < kHistBins; ++i) csv->row({times[m], hist_grid.node(i), heat[i], hist[i]});
  }
  report.set("particle_l1_max", worst_particle);

  // Fokker-Planck oracle from a cosine x Gaussian initial density
  const double sigma = cfg.sim.init.sigma > 0.0 ? cfg.sim.init.sigma : 0.3;
  auto rho = GridDensity::from_function(cfg.pde_nx, cfg.pde_ny, period, cfg.pde_y_max, [&](double x, double y) {
    return (1.0 + std::cos(k * x)) * std::exp(-0.5 * y * y / (sigma * sigma));
  });
  const auto marginal0 = rho.marginal();
  FokkerPlanckSolver solver(pot, kernel_spec(cfg, pot), beta, cfg.pde_nx, cfg.pde_ny, cfg.pde_y_max);
  const double dt = cfg.pde_dt > 0.0 ? cfg.pde_dt : 0.5 * solver.stable_dt(rho);
  double worst_pde = 0.0, worst_mass = 0.0;
  for (double t : times) {
    solver.advance(rho, t, dt);
    const double l1 = l1_density(rho.marginal(), heat_solve(marginal0, t, beta, period), rho.hx());
    worst_pde = std::max(worst_pde, l1);
    worst_mass = std::max(worst_mass, std::abs(rho.mass() - 1.0));
    report.set("pde_l1.t" + format_double(t), l1);
  }
  report.set("pde_l1_max", worst_pde);
  report.set("pde_mass_drift", worst_mass);
  report.set("pde_dt", dt);
  if (out.enabled()) {
    CsvWriter w(out.path("density_final.csv"), "density", {"x1", "x2", "p"});
    for (std::size_t i = 0; i < rho.nx(); ++i)
      for (std::size_t j = 0; j < rho.ny(); ++j) w.row({rho.x1(i), rho.y(j), rho.at(i, j)});
  }
  report.check("particle_l1_max", worst_particle, 0.0, 0.05);
  report.check("pde_l1_max", worst_pde, 0.0, 0.02);
}

}  // namespace

Report run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  validate(config);
  Report report;
  report.experiment = config.experiment;
  const Outputs out(out_dir);
  if (out.enabled()) {
    std::ofstream echo(out.path("config.txt"));
    echo << serialize(config);
  }
  const auto& name = config.experiment;
  if (name == "v1-abf")
    run_v1_abf(config, out, report);
  else if (name == "v1-langevin")
    run_v1_langevin(config, out, report);
  else if (name == "sweep-n")
    run_sweep_n(config, out, report);
  else if (name == "sweep-eps")
    run_sweep_eps(config, out, report);
  else if (name == "eps-large")
    run_eps_large(config, out, report);
  else if (name == "v2-short")
    run_v2(config, out, report, false);
  else if (name == "v2-long")
    run_v2(config, out, report, true);
  else if (name == "bias-demo")
    run_bias_demo(config, out, report);
  else if (name == "pde-xval")
    run_pde_xval(config, out, report);
  else
    throw ConfigError("unknown experiment '" + name + "'");
  if (out.enabled()) {
    std::ofstream summary(out.path("summary.txt"));
    summary << report.to_text();
  }
  return report;
}

}  // namespace abf
