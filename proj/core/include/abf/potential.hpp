#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace abf {

/// Canonical representative of x1 on a torus of period L, in [-L/2, L/2).
/// Throws ConfigError when period <= 0.
double wrap(double x1, double period);

/// Signed shortest displacement a - b on the torus.
inline double torus_delta(double a, double b, double period) { return wrap(a - b, period); }

/// A point whose first coordinate (the reaction coordinate) lives on a torus.
class TorusConfiguration {
 public:
  TorusConfiguration(double x1, std::vector<double> rest, double period);

  double x1() const { return x1_; }
  const std::vector<double>& rest() const { return rest_; }
  double period() const { return period_; }
  std::size_t dimension() const { return rest_.size() + 1; }

  /// Flat coordinates (x1, x2, ..., xd).
  std::vector<double> coordinates() const;

 private:
  double x1_;
  std::vector<double> rest_;
  double period_;
};

/// a * exp(-sum_i ((x_i - c_i) / w_i)^2). An infinite width drops that coordinate.
struct GaussianTerm {
  double amplitude = 0.0;
  std::vector<double> center;
  std::vector<double> width;

  bool operator==(const GaussianTerm&) const = default;
};

/// coefficient * (x_coordinate - center)^power
struct ConfinementTerm {
  std::size_t coordinate = 0;
  double center = 0.0;
  int power = 4;
  double coefficient = 0.0;

  bool operator==(const ConfinementTerm&) const = default;
};

/// Potential energy V on T_L x R^{d-1}. The first coordinate is wrapped
/// before the closed form is evaluated, so V is L-periodic in x1.
class Potential {
 public:
  enum class Form { gaussian_polynomial, sine_quadratic };

  /// 5e^{-x^2-y^2} - 5e^{-(x-1)^2-y^2} - 5e^{-(x+1)^2-y^2} + 0.2x^4 + 0.2y^4, period 4.
  static Potential v1();
  /// Two-channel variant with an upper path through (0, 5/3), period 4.
  static Potential v2();
  /// 0.5 (y - sin(2 pi x / L))^2, period 1 by default.
  static Potential sine_quadratic(double period = 1.0);
  /// Sum of Gaussians plus per-coordinate polynomial confinement.
  static Potential custom(std::size_t dimension, double period, std::vector<GaussianTerm> gaussians,
                          std::vector<ConfinementTerm> confinement, std::string name = "custom");
  /// Builds one of the named built-ins: v1, v2, sine_quadratic.
  static Potential by_name(const std::string& name);

  std::size_t dimension() const { return dimension_; }
  double period() const { return period_; }
  const std::string& name() const { return name_; }
  Form form() const { return form_; }
  const std::vector<GaussianTerm>& gaussians() const { return gaussians_; }
  const std::vector<ConfinementTerm>& confinement() const { return confinement_; }

  // Hot-path evaluators; x has dimension() entries, x[0] need not be wrapped.
  double energy(std::span<const double> x) const;
  void gradient(std::span<const double> x, std::span<double> grad) const;
  /// Partial derivative along the reaction coordinate, F = dV/dx1.
  double d1(std::span<const double> x) const;

 private:
  struct CompiledGaussian {
    double amplitude;
    std::vector<double> center;
    std::vector<double> inv_width_sq;
  };

  Potential() = default;
  void compile();

  Form form_ = Form::gaussian_polynomial;
  std::size_t dimension_ = 2;
  double period_ = 1.0;
  std::string name_;
  std::vector<GaussianTerm> gaussians_;
  std::vector<ConfinementTerm> confinement_;
  std::vector<CompiledGaussian> compiled_;
};

/// Checked evaluation on a configuration; throws ConfigError on dimension mismatch.
double energy(const Potential& pot, const TorusConfiguration& x);
std::vector<double> gradient(const Potential& pot, const TorusConfiguration& x);

}  // namespace abf
