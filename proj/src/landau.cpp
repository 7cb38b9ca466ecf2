#include "zbsim/landau.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "zbsim/errors.hpp"

namespace zb {

namespace {

void require_level(int n) {
  if (n < 0) throw DomainError("Landau index must be non-negative, got " + std::to_string(n));
}

void require_sign(int v, const char* what) {
  if (v != 1 && v != -1) {
    throw DomainError(std::string(what) + " must be +1 or -1, got " + std::to_string(v));
  }
}

}  // namespace

const char* to_string(TransitionKind k) {
  return k == TransitionKind::Intraband ? "intraband" : "interband";
}

LandauLabel::LandauLabel(int n, double kx, double kz, int eps, int s, const SimParams& params)
    : n_(n), kx_(kx), kz_(kz), eps_(eps), s_(s) {
  require_level(n);
  require_sign(eps, "energy branch");
  require_sign(s, "spin index");
  // s = +1 at n = 0 has every spinor entry proportional to |n-1> or omega_0 = 0.
  if (n == 0 && s == 1) throw NonexistentState("n = 0 has no s = +1 state");
  norm_and_chi(n, eps, kz, params);
}

double energy(int n, double kz, const SimParams& params) {
  require_level(n);
  const double mc2 = params.mass_energy;
  const double hw_n = params.field_ratio_b * params.mass_energy * std::sqrt(static_cast<double>(n));
  const double pz = kz * params.speed;
  // hypot keeps the intermediate squares in range for large n
  return std::hypot(std::hypot(mc2, hw_n), pz);
}

NormChi norm_and_chi(int n, int eps, double kz, const SimParams& params) {
  require_sign(eps, "energy branch");
  const double e = energy(n, kz, params);
  const double mc2 = params.mass_energy;
  // 2E^2 + 2 eps mc^2 E = 2E(E + eps mc^2); for eps = -1 use
  // E - mc^2 = (E^2 - mc^4)/(E + mc^2) to avoid cancellation.
  double gap;
  if (eps > 0) {
    gap = e + mc2;
  } else {
    const double hw_n = params.field_ratio_b * mc2 * std::sqrt(static_cast<double>(n));
    const double pz = kz * params.speed;
    const double excess = hw_n * hw_n + pz * pz;
    gap = excess / (e + mc2);
  }
  const double norm = std::sqrt(2.0 * e * gap);
  if (!(norm > 0.0)) {
    throw NonexistentState("Landau state n=" + std::to_string(n) + " eps=" + std::to_string(eps) +
                           " has zero norm");
  }
  // eps E + mc^2 = eps * gap
  return {norm, eps * gap / norm};
}

double chi_squared(int n, int eps, double kz, const SimParams& params) {
  require_sign(eps, "energy branch");
  const double e = energy(n, kz, params);
  const double mc2 = params.mass_energy;
  if (eps > 0) return (e + mc2) / (2.0 * e);
  return (e * e - mc2 * mc2) / ((e + mc2) * 2.0 * e);
}

SpectrumPoint spectrum_point(int n, int eps, double kz, const SimParams& params) {
  const auto nc = norm_and_chi(n, eps, kz, params);
  SpectrumPoint p;
  p.energy = energy(n, kz, params);
  p.omega_n = params.ladder_frequency() * std::sqrt(static_cast<double>(n));
  p.norm = nc.norm;
  p.chi = nc.chi;
  return p;
}

Transition transition_frequency(int n, int n_prime, int eps, int eps_prime, double kz,
                                const SimParams& params) {
  require_level(n);
  require_level(n_prime);
  require_sign(eps, "energy branch");
  require_sign(eps_prime, "energy branch");
  if (std::abs(n - n_prime) != 1) {
    throw ForbiddenTransition("transition " + std::to_string(n) + " -> " +
                              std::to_string(n_prime) + " violates |n - n'| = 1");
  }
  const double e = energy(n, kz, params);
  const double e_prime = energy(n_prime, kz, params);
  const double freq = std::abs(eps_prime * e_prime - eps * e) / params.mass_energy;
  return {freq, eps == eps_prime ? TransitionKind::Intraband : TransitionKind::Interband};
}

}  // namespace zb
