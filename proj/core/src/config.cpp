#include "abf/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "abf/csv.hpp"
#include "abf/error.hpp"

namespace abf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(s);
  while (std::getline(ss, cell, sep)) out.push_back(trim(cell));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
  if (v == "-inf") return -std::numeric_limits<double>::infinity();
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  // accept 2e6-style integers
  const double d = to_double(key, v);
  if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19)
    throw ConfigError("key '" + key + "': expected a non-negative integer, got '" + v + "'");
  return static_cast<std::uint64_t>(d);
}

template <class T, class F>
std::vector<T> to_list(const std::string& key, const std::string& v, F conv) {
  std::vector<T> out;
  if (trim(v).empty()) return out;
  for (const auto& item : split(v, ',')) out.push_back(static_cast<T>(conv(key, item)));
  return out;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_floating_point_v<T>)
      out += format_double(v[i]);
    else
      out += std::to_string(v[i]);
  }
  return out;
}

std::string gaussian_to_string(const GaussianTerm& g) {
  std::vector<double> v{g.amplitude};
  v.insert(v.end(), g.center.begin(), g.center.end());
  v.insert(v.end(), g.width.begin(), g.width.end());
  return join(v);
}

GaussianTerm gaussian_from_string(const std::string& key, const std::string& s, std::size_t dim) {
  const auto v = to_list<double>(key, s, to_double);
  if (v.size() != 1 + 2 * dim)
    throw ConfigError("key '" + key + "': expected amplitude, " + std::to_string(dim) + " centre and " +
                      std::to_string(dim) + " width values");
  GaussianTerm g;
  g.amplitude = v[0];
  g.center.assign(v.begin() + 1, v.begin() + 1 + static_cast<std::ptrdiff_t>(dim));
  g.width.assign(v.begin() + 1 + static_cast<std::ptrdiff_t>(dim), v.end());
  return g;
}

std::string confinement_to_string(const ConfinementTerm& c) {
  return std::to_string(c.coordinate) + "," + format_double(c.center) + "," + std::to_string(c.power) + "," +
         format_double(c.coefficient);
}

ConfinementTerm confinement_from_string(const std::string& key, const std::string& s) {
  const auto v = to_list<double>(key, s, to_double);
  if (v.size() != 4) throw ConfigError("key '" + key + "': expected coordinate,center,power,coefficient");
  if (v[0] < 0 || v[0] != std::floor(v[0]) || v[2] < 1 || v[2] != std::floor(v[2]))
    throw ConfigError("key '" + key + "': coordinate and power must be integers");
  return {static_cast<std::size_t>(v[0]), v[1], static_cast<int>(v[2]), v[3]};
}

struct Field {
  std::function<void(ExperimentConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

// Ordered so serialization is stable.
const std::vector<std::pair<std::string, Field>>& fields() {
  using C = ExperimentConfig;
  using S = const std::string&;
  static const std::vector<std::pair<std::string, Field>> table = {
      {"potential", {[](C& c, S, S v) { c.potential = v; }, [](const C& c) { return c.potential; }}},
      {"potential.period",
       {[](C& c, S k, S v) { c.period = to_double(k, v); }, [](const C& c) { return format_double(c.period); }}},
      {"custom.dimension",
       {[](C& c, S k, S v) { c.custom_dimension = to_uint(k, v); },
        [](const C& c) { return std::to_string(c.custom_dimension); }}},
      {"kernel.alpha",
       {[](C& c, S k, S v) { c.kernel.alpha = to_double(k, v); },
        [](const C& c) { return format_double(c.kernel.alpha); }}},
      {"kernel.epsilon",
       {[](C& c, S k, S v) { c.kernel.epsilon = to_double(k, v); },
        [](const C& c) { return format_double(c.kernel.epsilon); }}},
      {"sim.beta",
       {[](C& c, S k, S v) { c.sim.beta = to_double(k, v); }, [](const C& c) { return format_double(c.sim.beta); }}},
      {"sim.dt",
       {[](C& c, S k, S v) { c.sim.dt = to_double(k, v); }, [](const C& c) { return format_double(c.sim.dt); }}},
      {"sim.steps",
       {[](C& c, S k, S v) { c.sim.n_steps = to_uint(k, v); },
        [](const C& c) { return std::to_string(c.sim.n_steps); }}},
      {"sim.n_particles",
       {[](C& c, S k, S v) { c.sim.n_particles = to_uint(k, v); },
        [](const C& c) { return std::to_string(c.sim.n_particles); }}},
      {"sim.seed",
       {[](C& c, S k, S v) {
          c.sim.seed = to_uint(k, v);
          c.seeds = {c.sim.seed};
        },
        [](const C& c) { return std::to_string(c.sim.seed); }}},
      {"sim.mode",
       {[](C& c, S, S v) { c.sim.mode = parse_mode(v); }, [](const C& c) { return to_string(c.sim.mode); }}},
      {"sim.threads",
       {[](C& c, S k, S v) { c.sim.threads = static_cast<unsigned>(to_uint(k, v)); },
        [](const C& c) { return std::to_string(c.sim.threads); }}},
      {"init.kind",
       {[](C& c, S, S v) { c.sim.init.kind = parse_initial_kind(v); },
        [](const C& c) { return to_string(c.sim.init.kind); }}},
      {"init.center",
       {[](C& c, S k, S v) { c.sim.init.center = to_list<double>(k, v, to_double); },
        [](const C& c) { return join(c.sim.init.center); }}},
      {"init.sigma",
       {[](C& c, S k, S v) { c.sim.init.sigma = to_double(k, v); },
        [](const C& c) { return format_double(c.sim.init.sigma); }}},
      {"seeds",
       {[](C& c, S k, S v) {
          c.seeds = to_list<std::uint64_t>(k, v, to_uint);
          if (!c.seeds.empty()) c.sim.seed = c.seeds.front();
        },
        [](const C& c) { return join(c.seeds); }}},
      {"grid.points",
       {[](C& c, S k, S v) { c.grid_points = to_uint(k, v); },
        [](const C& c) { return std::to_string(c.grid_points); }}},
      {"reference.y_max",
       {[](C& c, S k, S v) { c.quadrature.y_max = to_double(k, v); },
        [](const C& c) { return format_double(c.quadrature.y_max); }}},
      {"reference.n_quad",
       {[](C& c, S k, S v) { c.quadrature.n_quad = to_uint(k, v); },
        [](const C& c) { return std::to_string(c.quadrature.n_quad); }}},
      {"sweep.n_values",
       {[](C& c, S k, S v) { c.sweep_n_values = to_list<std::size_t>(k, v, to_uint); },
        [](const C& c) { return join(c.sweep_n_values); }}},
      {"sweep.eps_values",
       {[](C& c, S k, S v) { c.sweep_eps_values = to_list<double>(k, v, to_double); },
        [](const C& c) { return join(c.sweep_eps_values); }}},
      {"output.snapshot_every",
       {[](C& c, S k, S v) { c.snapshot_every = to_uint(k, v); },
        [](const C& c) { return std::to_string(c.snapshot_every); }}},
      {"output.checkpoints",
       {[](C& c, S k, S v) { c.checkpoints = to_list<std::uint64_t>(k, v, to_uint); },
        [](const C& c) { return join(c.checkpoints); }}},
      {"pde.nx",
       {[](C& c, S k, S v) { c.pde_nx = to_uint(k, v); }, [](const C& c) { return std::to_string(c.pde_nx); }}},
      {"pde.ny",
       {[](C& c, S k, S v) { c.pde_ny = to_uint(k, v); }, [](const C& c) { return std::to_string(c.pde_ny); }}},
      {"pde.y_max",
       {[](C& c, S k, S v) { c.pde_y_max = to_double(k, v); },
        [](const C& c) { return format_double(c.pde_y_max); }}},
      {"pde.t",
       {[](C& c, S k, S v) { c.pde_t = to_double(k, v); }, [](const C& c) { return format_double(c.pde_t); }}},
      {"pde.dt",
       {[](C& c, S k, S v) { c.pde_dt = to_double(k, v); }, [](const C& c) { return format_double(c.pde_dt); }}},
      {"heat.times",
       {[](C& c, S k, S v) { c.heat_times = to_list<double>(k, v, to_double); },
        [](const C& c) { return join(c.heat_times); }}},
      {"demo.burn_in",
       {[](C& c, S k, S v) { c.demo_burn_in = to_double(k, v); },
        [](const C& c) { return format_double(c.demo_burn_in); }}},
      {"demo.bins",
       {[](C& c, S k, S v) { c.demo_bins = to_uint(k, v); }, [](const C& c) { return std::to_string(c.demo_bins); }}},
      {"demo.sample_every",
       {[](C& c, S k, S v) { c.demo_sample_every = to_uint(k, v); },
        [](const C& c) { return std::to_string(c.demo_sample_every); }}},
  };
  return table;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

Potential ExperimentConfig::make_potential() const {
  if (potential == "custom")
    return Potential::custom(custom_dimension, period, custom_gaussians, custom_confinement, "custom");
  if (potential == "sine_quadratic") return Potential::sine_quadratic(period);
  return Potential::by_name(potential);
}

Kernel ExperimentConfig::make_kernel() const {
  KernelSpec spec = kernel;
  spec.period = make_potential().period();
  return Kernel(spec);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"v1-abf", "v1-langevin", "sweep-n", "sweep-eps", "eps-large",
                                                 "v2-short", "v2-long", "bias-demo", "pde-xval"};
  return names;
}

ExperimentConfig preset(const std::string& name) {
  ExperimentConfig c;  // defaults are the v1-abf experiment
  c.experiment = name;
  c.potential = "v1";
  c.period = 4.0;
  c.kernel = {0.0, 0.01, 4.0};
  c.sim.beta = 10.0;
  c.sim.dt = 0.01;
  c.sim.n_steps = 2000;
  c.sim.n_particles = 1000;
  c.sim.mode = DynamicsMode::abf;
  c.sim.init = {InitialKind::gaussian, {-1.0, 0.0}, 0.1};
  c.seeds = {1};
  c.sim.seed = 1;

  if (name == "v1-abf") {
    c.seeds = {1, 2, 3, 4, 5};
  } else if (name == "v1-langevin") {
    c.sim.mode = DynamicsMode::langevin;
    c.sim.n_particles = 200;
  } else if (name == "sweep-n") {
    c.seeds = {1, 2, 3, 4, 5, 6, 7, 8};
  } else if (name == "sweep-eps") {
    c.sim.n_particles = 1500;
    c.seeds = {1, 2, 3};
  } else if (name == "eps-large") {
    c.kernel.epsilon = 1.0;
    c.sim.n_particles = 200;
  } else if (name == "v2-short") {
    c.potential = "v2";
    c.seeds = {1, 2, 3};
  } else if (name == "v2-long") {
    c.potential = "v2";
    c.sim.n_steps = 2000000;
    c.seeds = {1, 2, 3};
    c.checkpoints = {2000, 20000, 200000, 2000000};
  } else if (name == "bias-demo") {
    c.potential = "sine_quadratic";
    c.period = 1.0;
    c.kernel = {0.0, 0.05, 1.0};
    c.sim.beta = 1.0;
    c.sim.dt = 0.005;
    c.sim.n_steps = 4000;
    c.sim.n_particles = 4000;
    c.sim.init = {InitialKind::uniform_x1, {0.0, 0.0}, 1.0};
    c.quadrature.y_max = 10.0;
    c.grid_points = 100;
  } else if (name == "pde-xval") {
    c.sim.beta = 1.0;
    c.sim.n_particles = 5000;
    c.sim.n_steps = 100;
    c.sim.init = {InitialKind::cosine_x1, {0.0, 0.0}, 0.3};
    c.seeds = {1, 2, 3};
    c.kernel.epsilon = 0.05;
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown experiment '" + name + "' (known: " + known + ")");
  }
  return c;
}

void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value) {
  if (key == "experiment") {
    if (value != config.experiment) config = preset(value);
    return;
  }
  if (starts_with(key, "custom.gaussian.")) {
    const std::size_t idx = to_uint(key, key.substr(16));
    if (idx > config.custom_gaussians.size())
      throw ConfigError("key '" + key + "': gaussian terms must be numbered consecutively from 0");
    auto g = gaussian_from_string(key, value, config.custom_dimension);
    if (idx == config.custom_gaussians.size())
      config.custom_gaussians.push_back(std::move(g));
    else
      config.custom_gaussians[idx] = std::move(g);
    return;
  }
  if (starts_with(key, "custom.confine.")) {
    const std::size_t idx = to_uint(key, key.substr(15));
    if (idx > config.custom_confinement.size())
      throw ConfigError("key '" + key + "': confinement terms must be numbered consecutively from 0");
    auto t = confinement_from_string(key, value);
    if (idx == config.custom_confinement.size())
      config.custom_confinement.push_back(t);
    else
      config.custom_confinement[idx] = t;
    return;
  }
  for (const auto& [name, field] : fields()) {
    if (name == key) {
      field.set(config, key, value);
      return;
    }
  }
  throw ConfigError("unknown configuration key '" + key + "'");
}

void validate(const ExperimentConfig& c) {
  const Potential pot = c.make_potential();
  KernelSpec spec = c.kernel;
  spec.period = pot.period();
  static_cast<void>(Kernel(spec));
  validate(c.sim);
  if (c.sim.init.center.size() != pot.dimension())
    throw ConfigError("init.center needs " + std::to_string(pot.dimension()) + " values");
  if (c.seeds.empty()) throw ConfigError("seeds must not be empty");
  if (c.grid_points < 2) throw ConfigError("grid.points must be at least 2");
  if (c.quadrature.n_quad < 2 || !(c.quadrature.y_max > 0.0)) throw ConfigError("invalid reference quadrature");
  if (c.experiment == "sweep-eps")
    for (double e : c.sweep_eps_values) {
      KernelSpec s = spec;
      s.epsilon = e;
      static_cast<void>(Kernel(s));
    }
  for (std::size_t n : c.sweep_n_values)
    if (n == 0) throw ConfigError("sweep.n_values must be positive");
  if (!(c.demo_burn_in >= 0.0 && c.demo_burn_in < 1.0)) throw ConfigError("demo.burn_in must lie in [0, 1)");
  if (c.demo_bins < 2 || c.demo_sample_every == 0) throw ConfigError("invalid bias-demo sampling settings");
  if (c.pde_nx < 3 || c.pde_ny < 2 || !(c.pde_y_max > 0.0) || !(c.pde_t >= 0.0) || !(c.pde_dt >= 0.0))
    throw ConfigError("invalid pde settings");
}

std::string serialize(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "experiment = " << c.experiment << '\n';
  for (const auto& [name, field] : fields()) {
    if (name == "sim.seed") continue;  // implied by seeds
    out << name << " = " << field.get(c) << '\n';
  }
  for (std::size_t i = 0; i < c.custom_gaussians.size(); ++i)
    out << "custom.gaussian." << i << " = " << gaussian_to_string(c.custom_gaussians[i]) << '\n';
  for (std::size_t i = 0; i < c.custom_confinement.size(); ++i)
    out << "custom.confine." << i << " = " << confinement_to_string(c.custom_confinement[i]) << '\n';
  return out.str();
}

ExperimentConfig parse_config_text(const std::string& text) {
  struct Entry {
    std::size_t line;
    std::string key, value;
  };
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  std::string experiment;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    Entry e{number, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
    if (e.key.empty()) throw ConfigError("line " + std::to_string(number) + ": empty key");
    if (e.key == "experiment")
      experiment = e.value;
    else
      entries.push_back(std::move(e));
  }
  ExperimentConfig config;
  try {
    config = preset(experiment.empty() ? "v1-abf" : experiment);
  } catch (const ConfigError& err) {
    throw ConfigError(std::string("experiment: ") + err.what());
  }
  // custom.dimension must be known before gaussian terms are read
  std::stable_partition(entries.begin(), entries.end(), [](const Entry& e) { return e.key == "custom.dimension"; });
  for (const auto& e : entries) {
    try {
      apply_setting(config, e.key, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError("line " + std::to_string(e.line) + ": " + err.what());
    }
  }
  config.kernel.period = config.make_potential().period();
  validate(config);
  return config;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config_text(ss.str());
  } catch (const ConfigError& err) {
    throw ConfigError(path.string() + ": " + err.what());
  }
}

}  // namespace abf
