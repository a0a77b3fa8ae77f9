#include "abf/potential.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "abf/error.hpp"

namespace abf {

double wrap(double x1, double period) {
  if (!(period > 0.0)) throw ConfigError("torus period must be positive");
  const double half = 0.5 * period;
  double r = x1 - period * std::floor((x1 + half) / period);
  // floor rounding can land exactly on +L/2
  if (r >= half) r -= period;
  if (r < -half) r += period;
  return r;
}

TorusConfiguration::TorusConfiguration(double x1, std::vector<double> rest, double period)
    : x1_(wrap(x1, period)), rest_(std::move(rest)), period_(period) {}

std::vector<double> TorusConfiguration::coordinates() const {
  std::vector<double> out;
  out.reserve(dimension());
  out.push_back(x1_);
  out.insert(out.end(), rest_.begin(), rest_.end());
  return out;
}

namespace {

GaussianTerm gauss2(double a, double cx, double cy) { return {a, {cx, cy}, {1.0, 1.0}}; }

}  // namespace

Potential Potential::v1() {
  return custom(2, 4.0,
                {gauss2(5.0, 0.0, 0.0), gauss2(-5.0, 1.0, 0.0), gauss2(-5.0, -1.0, 0.0)},
                {{0, 0.0, 4, 0.2}, {1, 0.0, 4, 0.2}}, "v1");
}

Potential Potential::v2() {
  return custom(2, 4.0,
                {gauss2(3.0, 0.0, 1.0 / 3.0), gauss2(-3.0, 0.0, 5.0 / 3.0),
                 gauss2(-5.0, 1.0, 0.0), gauss2(-5.0, -1.0, 0.0)},
                {{0, 0.0, 4, 0.2}, {1, 1.0 / 3.0, 4, 0.2}}, "v2");
}

Potential Potential::sine_quadratic(double period) {
  if (!(period > 0.0)) throw ConfigError("torus period must be positive");
  Potential p;
  p.form_ = Form::sine_quadratic;
  p.dimension_ = 2;
  p.period_ = period;
  p.name_ = "sine_quadratic";
  return p;
}

Potential Potential::custom(std::size_t dimension, double period, std::vector<GaussianTerm> gaussians,
                            std::vector<ConfinementTerm> confinement, std::string name) {
  if (dimension < 2) throw ConfigError("potential dimension must be at least 2");
  if (!(period > 0.0)) throw ConfigError("torus period must be positive");
  for (const auto& g : gaussians) {
    if (g.center.size() != dimension || g.width.size() != dimension)
      throw ConfigError("gaussian term has wrong dimension");
    for (double w : g.width)
      if (!(w > 0.0)) throw ConfigError("gaussian widths must be positive");
  }
  for (const auto& c : confinement) {
    if (c.coordinate >= dimension) throw ConfigError("confinement coordinate out of range");
    if (c.power < 1) throw ConfigError("confinement power must be >= 1");
  }
  Potential p;
  p.form_ = Form::gaussian_polynomial;
  p.dimension_ = dimension;
  p.period_ = period;
  p.name_ = std::move(name);
  p.gaussians_ = std::move(gaussians);
  p.confinement_ = std::move(confinement);
  p.compile();
  return p;
}

Potential Potential::by_name(const std::string& name) {
  if (name == "v1") return v1();
  if (name == "v2") return v2();
  if (name == "sine_quadratic") return sine_quadratic();
  throw ConfigError("unknown potential '" + name + "' (expected v1, v2, sine_quadratic or custom)");
}

void Potential::compile() {
  compiled_.clear();
  for (const auto& g : gaussians_) {
    CompiledGaussian c{g.amplitude, g.center, std::vector<double>(dimension_)};
    for (std::size_t i = 0; i < dimension_; ++i)
      c.inv_width_sq[i] = std::isinf(g.width[i]) ? 0.0 : 1.0 / (g.width[i] * g.width[i]);
    compiled_.push_back(std::move(c));
  }
}

namespace {

inline double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

double Potential::energy(std::span<const double> x) const {
  const double x1 = wrap(x[0], period_);
  if (form_ == Form::sine_quadratic) {
    const double r = x[1] - std::sin(kTwoPi * x1 / period_);
    return 0.5 * r * r;
  }
  double v = 0.0;
  for (const auto& g : compiled_) {
    double q = 0.0;
    for (std::size_t i = 0; i < dimension_; ++i) {
      const double xi = i == 0 ? x1 : x[i];
      const double dx = xi - g.center[i];
      q += dx * dx * g.inv_width_sq[i];
    }
    v += g.amplitude * std::exp(-q);
  }
  for (const auto& c : confinement_) {
    const double xi = c.coordinate == 0 ? x1 : x[c.coordinate];
    v += c.coefficient * ipow(xi - c.center, c.power);
  }
  return v;
}

void Potential::gradient(std::span<const double> x, std::span<double> grad) const {
  const double x1 = wrap(x[0], period_);
  if (form_ == Form::sine_quadratic) {
    const double k = kTwoPi / period_;
    const double r = x[1] - std::sin(k * x1);
    grad[0] = -r * k * std::cos(k * x1);
    grad[1] = r;
    return;
  }
  for (std::size_t i = 0; i < dimension_; ++i) grad[i] = 0.0;
  for (const auto& g : compiled_) {
    double q = 0.0;
    for (std::size_t i = 0; i < dimension_; ++i) {
      const double xi = i == 0 ? x1 : x[i];
      const double dx = xi - g.center[i];
      q += dx * dx * g.inv_width_sq[i];
    }
    const double e = g.amplitude * std::exp(-q);
    for (std::size_t i = 0; i < dimension_; ++i) {
      const double xi = i == 0 ? x1 : x[i];
      grad[i] -= 2.0 * e * (xi - g.center[i]) * g.inv_width_sq[i];
    }
  }
  for (const auto& c : confinement_) {
    const double xi = c.coordinate == 0 ? x1 : x[c.coordinate];
    grad[c.coordinate] += c.coefficient * c.power * ipow(xi - c.center, c.power - 1);
  }
}

double Potential::d1(std::span<const double> x) const {
  const double x1 = wrap(x[0], period_);
  if (form_ == Form::sine_quadratic) {
    const double k = kTwoPi / period_;
    return -(x[1] - std::sin(k * x1)) * k * std::cos(k * x1);
  }
  double d = 0.0;
  for (const auto& g : compiled_) {
    if (g.inv_width_sq[0] == 0.0) continue;
    double q = 0.0;
    for (std::size_t i = 0; i < dimension_; ++i) {
      const double xi = i == 0 ? x1 : x[i];
      const double dx = xi - g.center[i];
      q += dx * dx * g.inv_width_sq[i];
    }
    d -= 2.0 * g.amplitude * std::exp(-q) * (x1 - g.center[0]) * g.inv_width_sq[0];
  }
  for (const auto& c : confinement_)
    if (c.coordinate == 0) d += c.coefficient * c.power * ipow(x1 - c.center, c.power - 1);
  return d;
}

namespace {

void check_compatible(const Potential& pot, const TorusConfiguration& x) {
  if (x.dimension() != pot.dimension()) throw ConfigError("configuration dimension does not match potential");
  if (x.period() != pot.period()) throw ConfigError("configuration period does not match potential");
}

}  // namespace

double energy(const Potential& pot, const TorusConfiguration& x) {
  check_compatible(pot, x);
  const auto c = x.coordinates();
  return pot.energy(c);
}

std::vector<double> gradient(const Potential& pot, const TorusConfiguration& x) {
  check_compatible(pot, x);
  const auto c = x.coordinates();
  std::vector<double> g(pot.dimension());
  pot.gradient(c, g);
  return g;
}

}  // namespace abf
