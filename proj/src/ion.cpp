#include "zbsim/ion.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "zbsim/errors.hpp"

namespace zb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(fmt::format("{} must be positive, got {}", name, v));
}

std::string phase_str(double p) {
  if (std::isnan(p)) return "-";
  if (p == 0.0) return "0";
  return fmt::format("{:g}pi", p / std::numbers::pi);
}

}  // namespace

const char* to_string(IonSpecies s) { return s == IonSpecies::Ca40 ? "Ca40+" : "Mg25+"; }

IonSpecies species_from_string(const std::string& name) {
  if (name == "Ca40" || name == "Ca40+" || name == "40Ca+") return IonSpecies::Ca40;
  if (name == "Mg25" || name == "Mg25+" || name == "25Mg+") return IonSpecies::Mg25;
  throw DomainError("unknown ion species '" + name + "' (Ca40 or Mg25)");
}

double ion_mass(IonSpecies s) {
  const double atomic = s == IonSpecies::Ca40 ? 39.962590863 : 24.985836976;
  return atomic * si::atomic_mass_unit - si::electron_mass;
}

double ground_state_spread(double mass, double trap_freq) {
  require_positive(mass, "ion mass");
  require_positive(trap_freq, "trap frequency");
  return std::sqrt(si::hbar / (2.0 * mass * trap_freq));
}

double trap_frequency(double mass, double spread) {
  require_positive(mass, "ion mass");
  require_positive(spread, "Delta");
  return si::hbar / (2.0 * mass * spread * spread);
}

TrapConfig TrapConfig::make(double eta, double omega_carrier, double omega_tilde, double mass,
                            std::optional<double> delta, std::optional<double> trap_freq) {
  TrapConfig t;
  t.eta = eta;
  t.omega_carrier = omega_carrier;
  t.omega_tilde = omega_tilde;
  t.ion_mass = mass;
  if (delta && trap_freq) {
    t.delta = *delta;
    t.trap_freq = *trap_freq;
  } else if (delta) {
    t.delta = *delta;
    t.trap_freq = trap_frequency(mass, *delta);
  } else if (trap_freq) {
    t.trap_freq = *trap_freq;
    t.delta = ground_state_spread(mass, *trap_freq);
  } else {
    throw ConstraintError("trap needs Delta or the trap frequency");
  }
  t.validate();
  return t;
}

void TrapConfig::validate() const {
  require_positive(eta, "eta");
  require_positive(omega_carrier, "Omega");
  require_positive(omega_tilde, "Omega~");
  require_positive(delta, "Delta");
  require_positive(ion_mass, "ion mass");
  require_positive(trap_freq, "trap frequency");
  const double expected = ground_state_spread(ion_mass, trap_freq);
  if (std::abs(delta - expected) > 1e-12 * expected) {
    throw DomainError(fmt::format("Delta = {} m disagrees with sqrt(hbar/2M nu) = {} m", delta, expected));
  }
}

double kappa_of(const TrapConfig& trap) {
  if (!(trap.omega_carrier != 0.0)) throw DomainError("Omega = 0 leaves kappa undefined");
  const double r = trap.eta * trap.omega_tilde / trap.omega_carrier;
  return r * r;
}

DiracMapping trap_to_dirac(const TrapConfig& trap, Dimensionality dim) {
  trap.validate();
  const double kappa = kappa_of(trap);
  DiracMapping m;
  m.params = make_params_dimensionless(2.0 * trap.eta * trap.omega_tilde / trap.omega_carrier, dim);
  m.params.kappa = kappa;
  m.speed = 2.0 * trap.eta * trap.delta * trap.omega_tilde;
  m.rest_energy = si::hbar * trap.omega_carrier;
  m.compton_wavelength = m.speed / trap.omega_carrier;
  m.compton_time = 1.0 / trap.omega_carrier;
  m.magnetic_length = std::sqrt(2.0) * trap.delta;
  return m;
}

TrapConfig dirac_to_trap(const SimParams& params, const TrapConstraints& fixed) {
  require_positive(params.kappa, "kappa");
  const int given = static_cast<int>(fixed.eta.has_value()) + static_cast<int>(fixed.omega_carrier.has_value()) +
                    static_cast<int>(fixed.omega_tilde.has_value());
  if (given < 2) throw ConstraintError("fix two of eta, Omega, Omega~ to solve the third");
  if (given > 2) throw ConstraintError("eta, Omega and Omega~ are all fixed; kappa over-determines them");
  if (!fixed.delta && !fixed.trap_freq) throw ConstraintError("fix Delta or the trap frequency");
  if (fixed.delta && fixed.trap_freq) throw ConstraintError("fix only one of Delta and the trap frequency");

  const double root = std::sqrt(params.kappa);
  double eta = 0.0, omega = 0.0, omega_tilde = 0.0;
  if (!fixed.omega_carrier) {
    eta = *fixed.eta;
    omega_tilde = *fixed.omega_tilde;
    omega = eta * omega_tilde / root;
  } else if (!fixed.omega_tilde) {
    eta = *fixed.eta;
    omega = *fixed.omega_carrier;
    omega_tilde = root * omega / eta;
  } else {
    omega = *fixed.omega_carrier;
    omega_tilde = *fixed.omega_tilde;
    eta = root * omega / omega_tilde;
  }
  const double mass = fixed.ion_mass > 0.0 ? fixed.ion_mass : zb::ion_mass(IonSpecies::Ca40);
  return TrapConfig::make(eta, omega, omega_tilde, mass, fixed.delta, fixed.trap_freq);
}

const char* to_string(ExcitationKind k) {
  switch (k) {
    case ExcitationKind::SigmaXMomentum: return "sigma_x p";
    case ExcitationKind::JC: return "JC";
    case ExcitationKind::AJC: return "AJC";
    case ExcitationKind::Carrier: return "carrier";
  }
  return "?";
}

ExcitationPlan excitation_plan(Dimensionality dim) {
  constexpr double pi = std::numbers::pi;
  // sigma_x i(a^dag - a) = JC(phi_r = -pi/2) + AJC(phi_b = +pi/2): two pairs
  auto momentum = [&](const char* levels, char axis, int sign) {
    return Excitation{ExcitationKind::SigmaXMomentum, levels, axis, sign, -0.5 * pi, 0.5 * pi, kNaN, 2};
  };
  // sigma_y from the carrier with phi_c = -pi/2
  auto carrier = [&](const char* levels) {
    return Excitation{ExcitationKind::Carrier, levels, '-', 1, kNaN, kNaN, -0.5 * pi, 1};
  };
  ExcitationPlan plan;
  plan.dimensionality = dim;
  plan.interactions = {
      momentum("ad", 'x', 1),
      momentum("bc", 'x', 1),
      Excitation{ExcitationKind::JC, "ad", 'y', 1, pi, kNaN, kNaN, 1},
      Excitation{ExcitationKind::AJC, "bc", 'y', 1, kNaN, pi, kNaN, 1},
  };
  if (dim == Dimensionality::ThreePlusOne) {
    plan.interactions.push_back(momentum("ac", 'z', 1));
    plan.interactions.push_back(momentum("bd", 'z', -1));
  }
  plan.interactions.push_back(carrier("ac"));
  plan.interactions.push_back(carrier("bd"));
  for (const auto& e : plan.interactions) plan.pair_count += e.pairs;
  return plan;
}

std::string ExcitationPlan::table() const {
  std::string out = fmt::format("excitation plan ({}): {} laser pairs\n", to_string(dimensionality), pair_count);
  out += fmt::format("  {:<10} {:<6} {:<4} {:<4} {:<8} {:<8} {:<8} {}\n", "term", "levels", "axis", "sign", "phi_r",
                     "phi_b", "phi_c", "pairs");
  for (const auto& e : interactions) {
    out += fmt::format("  {:<10} {:<6} {:<4} {:<4} {:<8} {:<8} {:<8} {}\n", to_string(e.kind), e.levels,
                       std::string(1, e.axis), e.sign > 0 ? "+" : "-", phase_str(e.phase_r), phase_str(e.phase_b),
                       phase_str(e.phase_c), e.pairs);
  }
  return out;
}

}  // namespace zb
