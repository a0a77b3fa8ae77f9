#include "abf/kernel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "abf/error.hpp"
#include "abf/potential.hpp"

namespace abf {

namespace {

double raw_bump(double u) { return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }

double compute_normalization() {
  double error = 0.0;
  const double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      raw_bump, -1.0, 1.0, 30, 1e-14, &error);
  if (!(error < 1e-10 * mass)) throw QuadratureError("bump normalization did not converge");
  return 1.0 / mass;
}

}  // namespace

double bump_normalization() {
  static const double c = compute_normalization();
  return c;
}

double bump(double u) { return bump_normalization() * raw_bump(u); }

Kernel::Kernel(const KernelSpec& spec) : spec_(spec) {
  if (!(spec.period > 0.0)) throw ConfigError("kernel period must be positive");
  if (!(spec.alpha >= 0.0) || !std::isfinite(spec.alpha)) throw ConfigError("kernel.alpha must be >= 0");
  if (!(spec.epsilon > 0.0)) throw ConfigError("kernel.epsilon must be positive");
  if (!(spec.epsilon < 0.5 * spec.period))
    throw ConfigError("kernel.epsilon must be smaller than half the period");
  inv_eps_ = 1.0 / spec.epsilon;
  peak_scale_ = bump_normalization() * inv_eps_;
}

double Kernel::psi(double x) const { return psi_wrapped(wrap(x, spec_.period)); }

double Kernel::psi_max() const { return peak_scale_ * std::exp(-1.0); }

double psi_eps(double x, const KernelSpec& spec) { return Kernel(spec).psi(x); }

double phi_eta(double x, const KernelSpec& spec) { return Kernel(spec).phi(x); }

}  // namespace abf
