#pragma once

// Trapped-ion simulation of the Dirac problem: correspondence between trap
// quantities and the simulated particle, and the laser-excitation plan.
//
//   c <-> 2 eta Delta Omega~,  mc^2 <-> hbar Omega,  L <-> sqrt(2) Delta,
//   kappa = (eta Omega~ / Omega)^2.

#include <optional>
#include <string>
#include <vector>

#include "zbsim/units.hpp"

namespace zb {

enum class IonSpecies { Ca40, Mg25 };

const char* to_string(IonSpecies s);
IonSpecies species_from_string(const std::string& name);

// Singly charged ion mass in kg.
double ion_mass(IonSpecies s);

// Delta = sqrt(hbar / 2 M nu) and its inverse.
double ground_state_spread(double mass, double trap_freq);
double trap_frequency(double mass, double spread);

struct TrapConfig {
  double eta = 0.06;
  double omega_carrier = 0.0;  // Omega, rad/s
  double omega_tilde = 0.0;    // rad/s
  double delta = 0.0;          // m
  double ion_mass = 0.0;       // kg
  double trap_freq = 0.0;      // nu, rad/s

  // Builds a config from Delta or nu (the other is derived).
  static TrapConfig make(double eta, double omega_carrier, double omega_tilde, double mass,
                         std::optional<double> delta, std::optional<double> trap_freq);

  // Throws DomainError on non-positive fields or if Delta and nu disagree
  // by more than 1e-12 relative.
  void validate() const;
};

double kappa_of(const TrapConfig& trap);

struct DiracMapping {
  SimParams params;
  double speed = 0.0;            // simulated c, m/s
  double rest_energy = 0.0;      // simulated mc^2, J
  double compton_wavelength = 0.0;  // m
  double compton_time = 0.0;     // s
  double magnetic_length = 0.0;  // m
};

DiracMapping trap_to_dirac(const TrapConfig& trap, Dimensionality dim = Dimensionality::TwoPlusOne);

// Fixed trap quantities for the inversion. Exactly one of eta, omega_tilde,
// omega_carrier is left open and solved from kappa; Delta or nu is needed.
struct TrapConstraints {
  std::optional<double> eta;
  std::optional<double> omega_carrier;
  std::optional<double> omega_tilde;
  std::optional<double> delta;
  std::optional<double> trap_freq;
  double ion_mass = 0.0;  // 0: 40Ca+
};

// Throws ConstraintError for under- or over-determined constraints.
TrapConfig dirac_to_trap(const SimParams& params, const TrapConstraints& fixed);

enum class ExcitationKind { SigmaXMomentum, JC, AJC, Carrier };

const char* to_string(ExcitationKind k);

struct Excitation {
  ExcitationKind kind;
  std::string levels;  // ad, bc, ac, bd
  char axis;           // x, y, z for momentum / ladder terms, '-' for the carrier
  int sign;
  double phase_r;      // red sideband phase, NaN if unused
  double phase_b;      // blue sideband phase, NaN if unused
  double phase_c;      // carrier phase, NaN if unused
  int pairs;           // laser pairs needed for the term
};

struct ExcitationPlan {
  Dimensionality dimensionality;
  std::vector<Excitation> interactions;
  int pair_count = 0;

  std::string table() const;
};

ExcitationPlan excitation_plan(Dimensionality dim);

}  // namespace zb
