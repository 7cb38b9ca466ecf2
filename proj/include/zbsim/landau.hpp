#pragma once

// Closed-form Landau spectrum of the Dirac Hamiltonian in a uniform field
// (Landau gauge A = (-By, 0, 0)), natural units.

#include "zbsim/units.hpp"

namespace zb {

enum class TransitionKind { Intraband, Interband };

const char* to_string(TransitionKind k);

// The five quantum numbers of a Johnson-Lippmann eigenstate.
class LandauLabel {
 public:
  // Throws DomainError for n < 0 or signs outside {+1,-1}, and
  // NonexistentState when the spinor norm vanishes.
  LandauLabel(int n, double kx, double kz, int eps, int s, const SimParams& params);

  int n() const { return n_; }
  double kx() const { return kx_; }
  double kz() const { return kz_; }
  int eps() const { return eps_; }
  int s() const { return s_; }

  // Spin projectors s_u = (s+1)/2, s_l = (s-1)/2.
  int s_upper() const { return (s_ + 1) / 2; }
  int s_lower() const { return (s_ - 1) / 2; }

 private:
  int n_;
  double kx_;
  double kz_;
  int eps_;
  int s_;
};

struct SpectrumPoint {
  double energy = 1.0;   // E_{n kz}
  double omega_n = 0.0;  // omega sqrt(n)
  double norm = 0.0;     // N_{n eps kz}
  double chi = 0.0;      // (eps E + mc^2) / N
};

struct NormChi {
  double norm;
  double chi;
};

struct Transition {
  double frequency;
  TransitionKind kind;
};

// E_{n kz} = sqrt((mc^2)^2 + n (hbar omega)^2 + (hbar kz c)^2).
double energy(int n, double kz, const SimParams& params);

// N = sqrt(2E^2 + 2 eps mc^2 E), chi = (eps E + mc^2)/N.
// Throws NonexistentState when N == 0.
NormChi norm_and_chi(int n, int eps, double kz, const SimParams& params);

// Squared spinor weight chi^2 = (eps E + 1)/(2 eps E); total over eps is 1.
// Defined (as 0) for the nonexistent n = 0, kz = 0, eps = -1 state.
double chi_squared(int n, int eps, double kz, const SimParams& params);

SpectrumPoint spectrum_point(int n, int eps, double kz, const SimParams& params);

// |eps' E_{n'} - eps E_n| for an allowed |n - n'| = 1 line.
Transition transition_frequency(int n, int n_prime, int eps, int eps_prime, double kz,
                                const SimParams& params);

}  // namespace zb
