#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zbsim/errors.hpp"
#include "zbsim/ion.hpp"

using namespace zb;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

TrapConfig fig2_trap(double omega_hz) {
  return TrapConfig::make(0.06, kTwoPi * omega_hz, kTwoPi * 68e3, ion_mass(IonSpecies::Ca40), 96e-10, std::nullopt);
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace

TEST_CASE("kappa from the trap") {
  CHECK(rel_close(kappa_of(fig2_trap(1000.0)), 16.65, 0.002));
  CHECK(rel_close(kappa_of(fig2_trap(3980.0)), 1.05, 0.01));
  CHECK(rel_close(kappa_of(fig2_trap(11980.0)), 0.116, 0.01));
  // Omega solved from kappa in extended precision
  CHECK(rel_close(kappa_of(fig2_trap(999.891886047578537797)), 16.65, 1e-12));
  CHECK(rel_close(kappa_of(fig2_trap(3981.67229763001537177)), 1.05, 1e-12));
  CHECK(rel_close(kappa_of(fig2_trap(11979.2924780999511651)), 0.116, 1e-12));
}

TEST_CASE("kappa vanishes with eta and is scale invariant") {
  auto t = fig2_trap(2000.0);
  double last = kappa_of(t);
  for (double eta : {1e-2, 1e-4, 1e-8}) {
    t.eta = eta;
    CHECK(kappa_of(t) < last);
    last = kappa_of(t);
  }
  CHECK(last < 1e-12);
  const auto base = fig2_trap(2500.0);
  for (double s : {1e-3, 0.5, 7.0, 1e4}) {
    auto scaled = base;
    scaled.omega_carrier *= s;
    scaled.omega_tilde *= s;
    CHECK(rel_close(kappa_of(scaled), kappa_of(base), 1e-14));
  }
  auto zero = base;
  zero.omega_carrier = 0.0;
  CHECK_THROWS_AS(kappa_of(zero), DomainError);
}

TEST_CASE("simulated constants") {
  const auto m = trap_to_dirac(fig2_trap(1000.0));
  CHECK(rel_close(m.speed, 0.000492199604223220086256, 1e-12));
  CHECK(rel_close(m.compton_wavelength, 7.8336e-8, 1e-12));
  CHECK(rel_close(m.compton_wavelength / 96e-10, 8.16, 1e-12));
  CHECK(rel_close(m.magnetic_length, std::sqrt(2.0) * 96e-10, 1e-15));
  CHECK(rel_close(m.compton_time, 1.0 / (kTwoPi * 1000.0), 1e-15));
  CHECK(rel_close(m.rest_energy, si::hbar * kTwoPi * 1000.0, 1e-15));
  CHECK(m.params.kappa == kappa_of(fig2_trap(1000.0)));
  // L in simulated Compton wavelengths
  CHECK(rel_close(m.params.magnetic_length, m.magnetic_length / m.compton_wavelength, 1e-12));
}

TEST_CASE("ground state spread and trap frequency") {
  const double m = ion_mass(IonSpecies::Ca40);
  CHECK(rel_close(trap_frequency(m, 96e-10) / kTwoPi, 1372230.46925961437462, 1e-12));
  CHECK(rel_close(ground_state_spread(m, trap_frequency(m, 96e-10)), 96e-10, 1e-14));
  CHECK(ion_mass(IonSpecies::Mg25) < m);
  CHECK(species_from_string("Mg25") == IonSpecies::Mg25);
  CHECK_THROWS_AS(species_from_string("Yb171"), DomainError);
}

TEST_CASE("trap validation") {
  auto t = fig2_trap(1000.0);
  CHECK_NOTHROW(t.validate());
  t.trap_freq *= 1.0 + 1e-9;
  CHECK_THROWS_AS(t.validate(), DomainError);
  t = fig2_trap(1000.0);
  t.eta = -0.1;
  CHECK_THROWS_AS(t.validate(), DomainError);
  CHECK_THROWS_AS(TrapConfig::make(0.06, 1.0, 1.0, 1e-25, std::nullopt, std::nullopt), ConstraintError);
}

TEST_CASE("inversion") {
  TrapConstraints fixed;
  fixed.eta = 0.06;
  fixed.omega_tilde = kTwoPi * 68e3;
  fixed.delta = 96e-10;
  for (double kappa : {16.65, 1.05, 0.116}) {
    const auto p = make_params_from_kappa(kappa);
    const auto trap = dirac_to_trap(p, fixed);
    const auto back = trap_to_dirac(trap).params;
    CHECK(rel_close(back.kappa, p.kappa, 1e-10));
    CHECK(rel_close(back.field_ratio_b, p.field_ratio_b, 1e-10));
    CHECK(rel_close(back.magnetic_length, p.magnetic_length, 1e-10));
  }
  const auto c = dirac_to_trap(make_params_from_kappa(0.116), fixed);
  CHECK(rel_close(c.omega_carrier / kTwoPi, 11980.0, 0.001));

  // solve Omega~ or eta instead
  TrapConstraints other;
  other.eta = 0.06;
  other.omega_carrier = kTwoPi * 1000.0;
  other.trap_freq = kTwoPi * 1.4e6;
  const auto t2 = dirac_to_trap(make_params_from_kappa(16.65), other);
  CHECK(rel_close(kappa_of(t2), 16.65, 1e-12));
  TrapConstraints third;
  third.omega_carrier = kTwoPi * 999.891886047578537797;
  third.omega_tilde = kTwoPi * 68e3;
  third.delta = 96e-10;
  CHECK(rel_close(dirac_to_trap(make_params_from_kappa(16.65), third).eta, 0.06, 1e-10));
}

TEST_CASE("inversion constraint errors") {
  const auto p = make_params_from_kappa(1.05);
  TrapConstraints under;
  under.eta = 0.06;
  under.delta = 96e-10;
  CHECK_THROWS_AS(dirac_to_trap(p, under), ConstraintError);
  TrapConstraints over = under;
  over.omega_tilde = 1.0;
  over.omega_carrier = 1.0;
  CHECK_THROWS_AS(dirac_to_trap(p, over), ConstraintError);
  TrapConstraints no_length;
  no_length.eta = 0.06;
  no_length.omega_tilde = 1.0;
  CHECK_THROWS_AS(dirac_to_trap(p, no_length), ConstraintError);
  TrapConstraints both = no_length;
  both.delta = 96e-10;
  both.trap_freq = 1e6;
  CHECK_THROWS_AS(dirac_to_trap(p, both), ConstraintError);
}

TEST_CASE("excitation plans") {
  const auto two = excitation_plan(Dimensionality::TwoPlusOne);
  const auto three = excitation_plan(Dimensionality::ThreePlusOne);
  CHECK(two.pair_count == 8);
  CHECK(three.pair_count == 12);
  CHECK(two.interactions.size() == 6);
  CHECK(three.interactions.size() == 8);
  int jc = 0, ajc = 0;
  for (const auto& e : two.interactions) {
    if (e.kind == ExcitationKind::JC) {
      ++jc;
      CHECK(e.levels == "ad");
      CHECK(e.phase_r == doctest::Approx(std::numbers::pi));
    }
    if (e.kind == ExcitationKind::AJC) {
      ++ajc;
      CHECK(e.levels == "bc");
      CHECK(e.phase_b == doctest::Approx(std::numbers::pi));
    }
    CHECK(e.axis != 'z');
  }
  CHECK(jc == 1);
  CHECK(ajc == 1);
  int minus = 0;
  for (const auto& e : three.interactions) minus += e.sign < 0;
  CHECK(minus == 1);
  CHECK(three.table().find("12 laser pairs") != std::string::npos);
}
