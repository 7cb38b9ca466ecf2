#pragma once

// Unit system and the parameters of the Dirac problem in a magnetic field.
//
// Internally everything is in natural units of the particle: mc^2 = 1,
// c = 1, hbar = 1. Lengths are measured in Compton wavelengths
// lambda_c = hbar/mc and times in t_c = hbar/mc^2. SI values only appear at
// the boundary (make_params and the CLI).

namespace zb {

// CODATA 2018.
namespace si {
inline constexpr double hbar = 1.054571817e-34;          // J s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double electron_mass = 9.1093837015e-31;     // kg
inline constexpr double speed_of_light = 299792458.0;         // m/s
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double electron_volt = elementary_charge;    // J
}  // namespace si

enum class Dimensionality { TwoPlusOne, ThreePlusOne };

const char* to_string(Dimensionality d);

struct SimParams {
  double mass_energy = 1.0;      // mc^2
  double speed = 1.0;            // c
  double field_ratio_b = 1.0;    // b = hbar*omega/mc^2, omega = sqrt(2) c / L
  double magnetic_length = 1.0;  // L in lambda_c
  double kappa = 0.25;           // hbar*omega_c / 2mc^2 = b^2/4
  Dimensionality dimensionality = Dimensionality::TwoPlusOne;

  // Ladder frequency omega = sqrt(2)/L in 1/t_c; numerically equal to b.
  double ladder_frequency() const;
};

// SI entry point for an electron in a field of `field_tesla`.
SimParams make_params(double field_tesla, Dimensionality dim = Dimensionality::TwoPlusOne);

// Natural-unit entry point, b = hbar*omega/mc^2.
SimParams make_params_dimensionless(double b, Dimensionality dim = Dimensionality::TwoPlusOne);

// Same, from kappa = b^2/4.
SimParams make_params_from_kappa(double kappa, Dimensionality dim = Dimensionality::TwoPlusOne);

// Electron scales for SI reporting.
double electron_compton_wavelength();  // m
double electron_compton_time();        // s
double electron_rest_energy();         // J

}  // namespace zb
