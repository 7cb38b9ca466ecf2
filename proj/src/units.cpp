#include "zbsim/units.hpp"

#include <cmath>
#include <string>

#include "zbsim/errors.hpp"

namespace zb {

const char* to_string(Dimensionality d) {
  return d == Dimensionality::TwoPlusOne ? "2+1" : "3+1";
}

double SimParams::ladder_frequency() const { return std::sqrt(2.0) * speed / magnetic_length; }

double electron_compton_wavelength() {
  return si::hbar / (si::electron_mass * si::speed_of_light);
}

double electron_compton_time() {
  return si::hbar / (si::electron_mass * si::speed_of_light * si::speed_of_light);
}

double electron_rest_energy() {
  return si::electron_mass * si::speed_of_light * si::speed_of_light;
}

SimParams make_params(double field_tesla, Dimensionality dim) {
  if (!(field_tesla > 0.0) || !std::isfinite(field_tesla)) {
    throw DomainError("magnetic field must be positive, got " + std::to_string(field_tesla));
  }
  const double length_si = std::sqrt(si::hbar / (si::elementary_charge * field_tesla));
  SimParams p;
  p.magnetic_length = length_si / electron_compton_wavelength();
  p.field_ratio_b = std::sqrt(2.0) / p.magnetic_length;
  // hbar e B / (m 2 m c^2), evaluated directly rather than through b^2/4
  p.kappa = si::hbar * si::elementary_charge * field_tesla /
            (2.0 * si::electron_mass * electron_rest_energy());
  p.dimensionality = dim;
  return p;
}

SimParams make_params_dimensionless(double b, Dimensionality dim) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw DomainError("field ratio b must be positive, got " + std::to_string(b));
  }
  SimParams p;
  p.field_ratio_b = b;
  p.magnetic_length = std::sqrt(2.0) / b;
  p.kappa = 0.25 * b * b;
  p.dimensionality = dim;
  return p;
}

SimParams make_params_from_kappa(double kappa, Dimensionality dim) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw DomainError("kappa must be positive, got " + std::to_string(kappa));
  }
  return make_params_dimensionless(2.0 * std::sqrt(kappa), dim);
}

}  // namespace zb
