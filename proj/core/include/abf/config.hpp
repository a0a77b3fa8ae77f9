#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "abf/dynamics.hpp"
#include "abf/kernel.hpp"
#include "abf/potential.hpp"
#include "abf/reference.hpp"

namespace abf {

/// Everything needed to reproduce one experiment. Serialized as plain
/// `key = value` lines with dotted sections; list values are comma separated.
struct ExperimentConfig {
  std::string experiment = "v1-abf";

  // potential
  std::string potential = "v1";
  double period = 4.0;  // used by custom and sine_quadratic
  std::size_t custom_dimension = 2;
  std::vector<GaussianTerm> custom_gaussians;
  std::vector<ConfinementTerm> custom_confinement;

  KernelSpec kernel{0.0, 0.01, 4.0};
  SimulationConfig sim;
  std::vector<std::uint64_t> seeds{1};

  std::size_t grid_points = 200;
  QuadratureOptions quadrature;

  std::vector<std::size_t> sweep_n_values{125, 250, 500, 1000, 2000};
  std::vector<double> sweep_eps_values{1e-4, 1e-3, 1e-2, 1e-1, 1.0};

  std::uint64_t snapshot_every = 0;         // 0 disables trajectory output
  std::vector<std::uint64_t> checkpoints;   // steps at which errors are recorded

  // Fokker-Planck oracle
  std::size_t pde_nx = 128;
  std::size_t pde_ny = 128;
  double pde_y_max = 4.0;
  double pde_t = 1.0;
  double pde_dt = 0.0;  // 0 picks half the stability bound
  std::vector<double> heat_times{0.25, 0.5, 1.0};

  // bias demo
  double demo_burn_in = 0.5;   // fraction of the run discarded before averaging
  std::size_t demo_bins = 20;
  std::uint64_t demo_sample_every = 10;

  bool operator==(const ExperimentConfig&) const = default;

  Potential make_potential() const;
  Kernel make_kernel() const;
};

/// Names of the built-in presets.
const std::vector<std::string>& preset_names();

/// Preset defaults. Throws ConfigError for an unknown name.
ExperimentConfig preset(const std::string& name);

/// Sets one key; throws ConfigError for unknown keys or malformed values.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

/// Cross-field validation (epsilon < L/2, dimensions, ...). Throws ConfigError.
void validate(const ExperimentConfig& config);

std::string serialize(const ExperimentConfig& config);

/// Parses `key = value` text. The `experiment` key selects the preset whose
/// defaults the remaining keys override. Unknown keys are rejected with their
/// line number.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config(const std::filesystem::path& path);

}  // namespace abf
