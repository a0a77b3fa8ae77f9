#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "abf/config.hpp"

namespace abf {

/// Pass/fail of a preset's headline metric against its acceptance band.
struct Check {
  std::string name;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
};

struct Report {
  std::string experiment;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<Check> checks;

  void set(const std::string& name, double value);
  /// Throws UsageError if the metric is missing.
  double get(const std::string& name) const;
  bool has(const std::string& name) const;
  void check(const std::string& name, double value, double lo, double hi);
  bool passed() const;
  std::string to_text() const;
};

/// Runs a preset end to end. When `out_dir` is non-empty it receives
/// config.txt (a config echo that reproduces every file), summary.txt and
/// the preset's CSV outputs.
Report run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir = {});

}  // namespace abf
