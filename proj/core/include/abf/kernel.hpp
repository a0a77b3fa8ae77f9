#pragma once

#include <cmath>

namespace abf {

/// Normalization c of the base bump, so that c * exp(-1/(1-u^2)) has unit
/// mass on [-1, 1]. Computed once by adaptive Gauss-Kronrod quadrature.
double bump_normalization();

/// Smooth compactly supported bump: c * exp(-1/(1-u^2)) on |u| < 1, else 0.
double bump(double u);

/// Mollifier parameters. phi_eta(x) = alpha + psi_eps(x), with psi_eps the
/// L-periodization of (1/eps) bump(x/eps).
struct KernelSpec {
  double alpha = 0.0;
  double epsilon = 0.01;
  double period = 1.0;

  bool operator==(const KernelSpec&) const = default;
};

/// Validated, immutable kernel. Construction throws ConfigError unless
/// alpha >= 0 and 0 < epsilon < period/2.
class Kernel {
 public:
  explicit Kernel(const KernelSpec& spec);

  const KernelSpec& spec() const { return spec_; }
  double alpha() const { return spec_.alpha; }
  double epsilon() const { return spec_.epsilon; }
  double period() const { return spec_.period; }

  double psi(double x) const;
  double phi(double x) const { return spec_.alpha + psi(x); }

  /// psi for a displacement already reduced to [-L/2, L/2).
  double psi_wrapped(double dx) const {
    const double u = dx * inv_eps_;
    if (u <= -1.0 || u >= 1.0) return 0.0;
    return peak_scale_ * fast_core(u);
  }

  /// Value of psi at the origin, c e^{-1} / eps.
  double psi_max() const;

 private:
  static double fast_core(double u) { return std::exp(-1.0 / (1.0 - u * u)); }

  KernelSpec spec_;
  double inv_eps_;
  double peak_scale_;
};

double psi_eps(double x, const KernelSpec& spec);
double phi_eta(double x, const KernelSpec& spec);

}  // namespace abf
