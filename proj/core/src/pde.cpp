#include "abf/pde.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "abf/error.hpp"

namespace abf {

GridDensity::GridDensity(std::size_t nx, std::size_t ny, double period, double y_max)
    : nx_(nx), ny_(ny), period_(period), y_max_(y_max), values_(nx * ny, 0.0) {
  if (nx < 3 || ny < 2) throw ConfigError("density grid too small");
  if (!(period > 0.0) || !(y_max > 0.0)) throw ConfigError("density grid extent must be positive");
}

GridDensity GridDensity::from_function(std::size_t nx, std::size_t ny, double period, double y_max,
                                       const std::function<double(double, double)>& density) {
  GridDensity g(nx, ny, period, y_max);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      const double v = density(g.x1(i), g.y(j));
      if (!(v >= 0.0) || !std::isfinite(v)) throw UsageError("initial density must be finite and non-negative");
      g.at(i, j) = v;
    }
  const double m = g.mass();
  if (!(m > 0.0)) throw UsageError("initial density has zero mass");
  for (double& v : g.values_) v /= m;
  return g;
}

double GridDensity::mass() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * hx() * hy();
}

std::vector<double> GridDensity::marginal() const {
  std::vector<double> out(nx_, 0.0);
  for (std::size_t i = 0; i < nx_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < ny_; ++j) s += at(i, j);
    out[i] = s * hy();
  }
  return out;
}

std::vector<double> GridDensity::weighted_marginal(const std::function<double(double, double)>& g) const {
  std::vector<double> out(nx_, 0.0);
  for (std::size_t i = 0; i < nx_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < ny_; ++j) s += g(x1(i), y(j)) * at(i, j);
    out[i] = s * hy();
  }
  return out;
}

std::vector<double> heat_solve(std::span<const double> p0, double t, double beta, double period) {
  const std::size_t m = p0.size();
  if (m == 0) throw UsageError("heat_solve needs a non-empty density");
  if (!(t >= 0.0) || !(beta > 0.0) || !(period > 0.0)) throw ConfigError("heat_solve needs t >= 0, beta > 0, L > 0");
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> re(m, 0.0), im(m, 0.0);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i) {
      const double a = two_pi * static_cast<double>((k * i) % m) / static_cast<double>(m);
      re[k] += p0[i] * std::cos(a);
      im[k] -= p0[i] * std::sin(a);
    }
  for (std::size_t k = 1; k < m; ++k) {
    const double ks = static_cast<double>(std::min(k, m - k));
    const double wave = two_pi * ks / period;
    const double damp = std::exp(-wave * wave * t / beta);
    re[k] *= damp;
    im[k] *= damp;
  }
  std::vector<double> out(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double a = two_pi * static_cast<double>((k * i) % m) / static_cast<double>(m);
      s += re[k] * std::cos(a) - im[k] * std::sin(a);
    }
    out[i] = s / static_cast<double>(m);
  }
  return out;
}

namespace {

// Bernoulli function x / (e^x - 1), continuous at 0.
double bernoulli(double x) {
  if (std::abs(x) < 1e-6) return 1.0 - 0.5 * x;
  return x / std::expm1(x);
}

// Exponentially fitted (Scharfetter-Gummel) flux of b p - D p' across a face
// between cells `left` and `right`. Upwind for large cell Peclet numbers,
// centred for small ones; both weights stay non-negative.
double fitted_flux(double b, double diff, double h, double left, double right) {
  const double pe = b * h / diff;
  return diff / h * (bernoulli(-pe) * left - bernoulli(pe) * right);
}

// Normalised discrete kernel: weights[k + K] for offsets k = -K..K cells, sum 1.
std::vector<double> kernel_weights(const Kernel& kernel, double h) {
  const auto reach = static_cast<std::size_t>(std::floor(kernel.epsilon() / h));
  std::vector<double> w(2 * reach + 1);
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double off = (static_cast<double>(k) - static_cast<double>(reach)) * h;
    w[k] = kernel.psi(off);
    s += w[k];
  }
  for (double& v : w) v /= s;
  return w;
}

std::vector<double> circular_smooth(const std::vector<double>& q, const std::vector<double>& w, double alpha,
                                    double h) {
  const std::size_t m = q.size();
  const std::size_t reach = w.size() / 2;
  double total = 0.0;
  for (double v : q) total += v;
  total *= h;
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const std::size_t src = (i + m * (reach / m + 1) + reach - k) % m;
      s += w[k] * q[src];
    }
    out[i] = alpha * total + s;
  }
  return out;
}

std::vector<double> force_from_columns(const std::vector<double>& q_force, const std::vector<double>& q_mass,
                                       const Kernel& kernel, double h) {
  const auto w = kernel_weights(kernel, h);
  const auto num = circular_smooth(q_force, w, kernel.alpha(), h);
  const auto den = circular_smooth(q_mass, w, kernel.alpha(), h);
  std::vector<double> out(num.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!(den[i] > 0.0))
      throw SingularDensityError("regularized force denominator vanishes at column " + std::to_string(i));
    out[i] = num[i] / den[i];
  }
  return out;
}

}  // namespace

MeanForceProfile regularized_force(const GridDensity& rho, const Potential& pot, const KernelSpec& spec) {
  if (pot.dimension() != 2) throw ConfigError("the Fokker-Planck oracle is two-dimensional");
  if (pot.period() != rho.period() || spec.period != rho.period())
    throw ConfigError("density, potential and kernel periods differ");
  const Kernel kernel(spec);
  const auto q_mass = rho.marginal();
  const auto q_force = rho.weighted_marginal([&](double x, double y) {
    const std::array<double, 2> p{x, y};
    return pot.d1(p);
  });
  return {rho.column_grid(), force_from_columns(q_force, q_mass, kernel, rho.hx()), ProfileKind::pde_estimate, 0};
}

FokkerPlanckSolver::FokkerPlanckSolver(Potential pot, KernelSpec spec, double beta, std::size_t nx, std::size_t ny,
                                       double y_max, bool biased)
    : pot_(std::move(pot)), spec_(spec), beta_(beta), nx_(nx), ny_(ny), y_max_(y_max), biased_(biased) {
  if (pot_.dimension() != 2) throw ConfigError("the Fokker-Planck oracle is two-dimensional");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be positive and finite");
  period_ = pot_.period();
  spec_.period = period_;
  if (biased_) static_cast<void>(Kernel(spec_));
  const GridDensity layout(nx, ny, period_, y_max);
  d1v_face_.resize(nx * ny);
  d2v_face_.resize(nx * ny);
  std::array<double, 2> g{};
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      const std::array<double, 2> fx{layout.x1(i) + 0.5 * layout.hx(), layout.y(j)};
      pot_.gradient(fx, g);
      d1v_face_[i * ny + j] = g[0];
      const std::array<double, 2> fy{layout.x1(i), layout.y(j) + 0.5 * layout.hy()};
      pot_.gradient(fy, g);
      d2v_face_[i * ny + j] = g[1];
    }
  bias_face_.assign(nx, 0.0);
  flux_x_.assign(nx * ny, 0.0);
  flux_y_.assign(nx * ny, 0.0);
}

// The bias is built from the same face densities the x1 flux transports, so
// with a vanishing bandwidth the drift fluxes cancel column by column and the
// discrete x1 marginal follows the discrete heat equation.
void FokkerPlanckSolver::compute_bias(const GridDensity& rho) {
  if (!biased_) return;
  std::vector<double> q_mass(nx_, 0.0), q_force(nx_, 0.0);
  for (std::size_t i = 0; i < nx_; ++i) {
    const std::size_t ip = (i + 1) % nx_;
    double m = 0.0, f = 0.0;
    for (std::size_t j = 0; j < ny_; ++j) {
      const double face = 0.5 * (rho.at(i, j) + rho.at(ip, j));
      m += face;
      f += d1v_face_[i * ny_ + j] * face;
    }
    q_mass[i] = m * rho.hy();
    q_force[i] = f * rho.hy();
  }
  bias_face_ = force_from_columns(q_force, q_mass, Kernel(spec_), rho.hx());
}

double FokkerPlanckSolver::max_drift() const {
  double m = 0.0;
  for (std::size_t i = 0; i < nx_; ++i)
    for (std::size_t j = 0; j < ny_; ++j) {
      m = std::max(m, std::abs(-d1v_face_[i * ny_ + j] + bias_face_[i]));
      if (j + 1 < ny_) m = std::max(m, std::abs(d2v_face_[i * ny_ + j]));
    }
  return m;
}

double FokkerPlanckSolver::stable_dt(const GridDensity& rho) {
  compute_bias(rho);
  const double h = std::min(rho.hx(), rho.hy());
  const double drift = max_drift();
  double dt = h * h * beta_ / 4.0;
  if (drift > 0.0) dt = std::min(dt, 0.5 * h / drift);
  return dt;
}

void FokkerPlanckSolver::step(GridDensity& rho, double dt) {
  if (rho.nx() != nx_ || rho.ny() != ny_ || rho.period() != period_ || rho.y_max() != y_max_)
    throw UsageError("density grid does not match solver grid");
  if (!(dt > 0.0)) throw ConfigError("Fokker-Planck dt must be positive");
  compute_bias(rho);
  const double hx = rho.hx(), hy = rho.hy(), h = std::min(hx, hy);
  const double diff = 1.0 / beta_;
  const double drift = max_drift();
  if (dt > h * h * beta_ / 4.0 || dt * drift > 0.5 * h) {
    double suggest = h * h * beta_ / 4.0;
    if (drift > 0.0) suggest = std::min(suggest, 0.5 * h / drift);
    std::ostringstream msg;
    msg << "Fokker-Planck step violates the stability bound; use dt <= " << suggest;
    throw ConfigError(msg.str());
  }

  // x1 faces (i + 1/2, j), periodic
  for (std::size_t i = 0; i < nx_; ++i) {
    const std::size_t ip = (i + 1) % nx_;
    for (std::size_t j = 0; j < ny_; ++j) {
      const double b = -d1v_face_[i * ny_ + j] + bias_face_[i];
      const double left = rho.at(i, j), right = rho.at(ip, j);
      // centred transport keeps the marginal cancellation exact; it is
      // positivity preserving while the cell Peclet number is at most 2
      flux_x_[i * ny_ + j] = std::abs(b) * hx <= 2.0 * diff
                                 ? 0.5 * b * (left + right) - diff * (right - left) / hx
                                 : fitted_flux(b, diff, hx, left, right);
    }
  }
  // y faces (i, j + 1/2); walls carry no flux
  for (std::size_t i = 0; i < nx_; ++i)
    for (std::size_t j = 0; j + 1 < ny_; ++j) {
      const double b = -d2v_face_[i * ny_ + j];
      flux_y_[i * ny_ + j] = fitted_flux(b, diff, hy, rho.at(i, j), rho.at(i, j + 1));
    }
  for (std::size_t i = 0; i < nx_; ++i) {
    const std::size_t im = (i + nx_ - 1) % nx_;
    for (std::size_t j = 0; j < ny_; ++j) {
      const double fx = flux_x_[i * ny_ + j] - flux_x_[im * ny_ + j];
      const double up = j + 1 < ny_ ? flux_y_[i * ny_ + j] : 0.0;
      const double down = j > 0 ? flux_y_[i * ny_ + j - 1] : 0.0;
      rho.at(i, j) -= dt * (fx / hx + (up - down) / hy);
    }
  }
  rho.time += dt;
}

void FokkerPlanckSolver::advance(GridDensity& rho, double t_end, double dt) {
  while (rho.time < t_end - 1e-12 * std::max(1.0, t_end)) {
    const double h = std::min(dt, t_end - rho.time);
    step(rho, h);
  }
}

GridDensity fp_step(const GridDensity& rho, const Potential& pot, const KernelSpec& spec, double dt, double beta) {
  FokkerPlanckSolver solver(pot, spec, beta, rho.nx(), rho.ny(), rho.y_max());
  GridDensity out = rho;
  solver.step(out, dt);
  return out;
}

}  // namespace abf
