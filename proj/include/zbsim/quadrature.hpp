#pragma once

#include <span>
#include <vector>

namespace zb {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

// Gauss-Hermite rule for weight exp(-x^2). `scaled_weights` holds
// w_i * exp(x_i^2), usable for integrands that are not written with the
// weight factored out; they stay finite where w_i underflows.
struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;

  std::size_t size() const { return nodes.size(); }
};

HermiteRule gauss_hermite(int points);

// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int points);

// Rule for integrals of functions that behave like exp(-a (x - c)^2) times a
// polynomial, obtained by shifting and scaling a Gauss-Hermite rule. Exact
// when integrand / exp(-a (x - c)^2) is a polynomial of degree < 2 * points.
QuadratureRule scaled_hermite(int points, double center, double precision);

// Normalized oscillator functions psi_0..psi_{n_max}(xi),
// psi_n = (2^n n! sqrt(pi))^{-1/2} exp(-xi^2/2) H_n(xi), via the upward
// recurrence on normalized functions (no factorials).
void oscillator_functions(double xi, int n_max, std::span<double> out);

std::vector<double> oscillator_functions(double xi, int n_max);

}  // namespace zb
