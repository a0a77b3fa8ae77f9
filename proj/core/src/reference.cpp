#include "abf/reference.hpp"

#include <algorithm>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

#include "abf/error.hpp"

namespace abf {

namespace {

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre make_rule(std::size_t n) {
  GaussLegendre rule;
  // boost returns the non-negative zeros in increasing order
  const auto zeros = boost::math::legendre_p_zeros<double>(static_cast<int>(n));
  auto weight = [n](double x) {
    const double dp = boost::math::legendre_p_prime<double>(static_cast<int>(n), x);
    return 2.0 / ((1.0 - x * x) * dp * dp);
  };
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    if (*it == 0.0) continue;
    rule.nodes.push_back(-*it);
    rule.weights.push_back(weight(*it));
  }
  for (double x : zeros) {
    rule.nodes.push_back(x);
    rule.weights.push_back(weight(x));
  }
  return rule;
}

const GaussLegendre& rule_for(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, GaussLegendre> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
  return it->second;
}

void validate(double beta, const QuadratureOptions& opts) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be positive and finite");
  if (!(opts.y_max > 0.0)) throw ConfigError("quadrature y_max must be positive");
  if (opts.n_quad < 2) throw ConfigError("quadrature needs at least 2 nodes");
}

}  // namespace

SliceWeights slice_weights(double z, const Potential& pot, double beta, const QuadratureOptions& opts) {
  validate(beta, opts);
  const auto& rule = rule_for(opts.n_quad);
  const std::size_t q = rule.nodes.size();
  const std::size_t dims = pot.dimension() - 1;

  std::size_t total = 1;
  for (std::size_t i = 0; i < dims; ++i) total *= q;

  std::vector<double> x(pot.dimension());
  std::vector<double> energies(total), forces(total), weights(total);
  std::vector<std::size_t> idx(dims, 0);
  x[0] = z;
  for (std::size_t k = 0; k < total; ++k) {
    double w = 1.0;
    for (std::size_t i = 0; i < dims; ++i) {
      x[i + 1] = opts.y_max * rule.nodes[idx[i]];
      w *= opts.y_max * rule.weights[idx[i]];
    }
    energies[k] = pot.energy(x);
    forces[k] = pot.d1(x);
    weights[k] = w;
    for (std::size_t i = 0; i < dims; ++i) {
      if (++idx[i] < q) break;
      idx[i] = 0;
    }
  }

  SliceWeights out;
  out.v_min = *std::min_element(energies.begin(), energies.end());
  for (std::size_t k = 0; k < total; ++k) {
    const double b = std::exp(-beta * (energies[k] - out.v_min));
    out.numerator += weights[k] * forces[k] * b;
    out.denominator += weights[k] * b;
  }

  // boundary faces: one coordinate pinned at +-y_max, the others on the rule nodes
  double tail = 0.0;
  std::fill(idx.begin(), idx.end(), 0);
  const std::size_t face = total / q;
  for (std::size_t pinned = 0; pinned < dims; ++pinned) {
    for (double sign : {-1.0, 1.0}) {
      std::vector<std::size_t> fidx(dims, 0);
      for (std::size_t k = 0; k < face; ++k) {
        std::size_t slot = 0;
        for (std::size_t i = 0; i < dims; ++i) {
          if (i == pinned) {
            x[i + 1] = sign * opts.y_max;
            continue;
          }
          x[i + 1] = opts.y_max * rule.nodes[fidx[slot]];
          ++slot;
        }
        tail = std::max(tail, std::exp(-beta * (pot.energy(x) - out.v_min)));
        for (std::size_t i = 0; i + 1 < dims; ++i) {
          if (++fidx[i] < q) break;
          fidx[i] = 0;
        }
      }
    }
  }
  out.tail_ratio = tail;
  if (!(out.denominator > 0.0)) throw QuadratureError("slice normalization vanished");
  if (tail > opts.tail_tolerance)
    throw QuadratureError("slice integrand not negligible at |y| = y_max (ratio " + std::to_string(tail) +
                          "); increase y_max");
  return out;
}

MeanForceProfile mean_force(const PeriodicGrid& grid, const Potential& pot, double beta,
                            const QuadratureOptions& opts) {
  if (grid.period != pot.period()) throw UsageError("grid period does not match potential period");
  MeanForceProfile out{grid, std::vector<double>(grid.size), ProfileKind::exact, 0};
  for (std::size_t i = 0; i < grid.size; ++i) out.values[i] = slice_weights(grid.node(i), pot, beta, opts).mean_force();
  return out;
}

double free_energy_at(double z, const Potential& pot, double beta, const QuadratureOptions& opts) {
  const auto s = slice_weights(z, pot, beta, opts);
  return s.v_min - std::log(s.denominator) / beta;
}

MeanForceProfile free_energy(const PeriodicGrid& grid, const Potential& pot, double beta,
                             const QuadratureOptions& opts) {
  if (grid.period != pot.period()) throw UsageError("grid period does not match potential period");
  MeanForceProfile out{grid, std::vector<double>(grid.size), ProfileKind::free_energy, 0};
  for (std::size_t i = 0; i < grid.size; ++i) out.values[i] = free_energy_at(grid.node(i), pot, beta, opts);
  const double lo = *std::min_element(out.values.begin(), out.values.end());
  for (double& v : out.values) v -= lo;
  return out;
}

}  // namespace abf
