#include "zbsim/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zbsim/errors.hpp"

namespace zb {

namespace {
constexpr int kMaxNewton = 100;
}

HermiteRule gauss_hermite(int points) {
  if (points < 1) throw DomainError("Gauss-Hermite rule needs at least one point");
  const int n = points;
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  HermiteRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  rule.scaled_weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // Asymptotic initial guesses for the largest roots, then extrapolation.
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[i - 2];
    }
    double pp = 0.0;
    bool converged = false;
    for (int it = 0; it < kMaxNewton; ++it) {
      // orthonormal Hermite polynomials p_j (weight exp(-x^2))
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged) throw ConvergenceError("Gauss-Hermite root iteration did not converge");
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    const double w = 2.0 / (pp * pp);
    rule.weights[i] = rule.weights[n - 1 - i] = w;
    // w exp(z^2) = 2 / (pp exp(-z^2/2))^2
    const double pp_fn = pp * std::exp(-0.5 * z * z);
    rule.scaled_weights[i] = rule.scaled_weights[n - 1 - i] = 2.0 / (pp_fn * pp_fn);
  }
  return rule;
}

QuadratureRule gauss_legendre(int points) {
  if (points < 1) throw DomainError("Gauss-Legendre rule needs at least one point");
  const int n = points;
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    bool converged = false;
    for (int it = 0; it < kMaxNewton; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) throw ConvergenceError("Gauss-Legendre root iteration did not converge");
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return rule;
}

QuadratureRule scaled_hermite(int points, double center, double precision) {
  if (!(precision > 0.0)) throw DomainError("scaled Gauss-Hermite rule needs positive precision");
  const auto gh = gauss_hermite(points);
  const double inv_sqrt = 1.0 / std::sqrt(precision);
  QuadratureRule rule;
  rule.nodes.resize(gh.size());
  rule.weights.resize(gh.size());
  for (std::size_t i = 0; i < gh.size(); ++i) {
    rule.nodes[i] = center + gh.nodes[i] * inv_sqrt;
    rule.weights[i] = gh.scaled_weights[i] * inv_sqrt;
  }
  return rule;
}

void oscillator_functions(double xi, int n_max, std::span<double> out) {
  if (n_max < 0) throw DomainError("oscillator index must be non-negative");
  if (out.size() < static_cast<std::size_t>(n_max) + 1) {
    throw std::invalid_argument("oscillator_functions: output span too small");
  }
  out[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
  if (n_max == 0) return;
  out[1] = std::sqrt(2.0) * xi * out[0];
  for (int n = 1; n < n_max; ++n) {
    out[n + 1] = std::sqrt(2.0 / (n + 1.0)) * xi * out[n] - std::sqrt(n / (n + 1.0)) * out[n - 1];
  }
}

std::vector<double> oscillator_functions(double xi, int n_max) {
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
  oscillator_functions(xi, n_max, out);
  return out;
}

}  // namespace zb
