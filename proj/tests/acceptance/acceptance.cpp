// Acceptance checks, one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "zbsim/config.hpp"
#include "zbsim/ion.hpp"
#include "zbsim/landau.hpp"
#include "zbsim/oracle.hpp"
#include "zbsim/runner.hpp"
#include "zbsim/spectral.hpp"

using namespace zb;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
  bool passed;
  std::string detail;
};

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

RunOptions quiet() {
  RunOptions o;
  o.write_files = false;
  return o;
}

Outcome spectrum_closed_form() {
  Clock clock;
  double worst = 0.0;
  int mismatches = 0;
  for (double b : {0.1, 1.0, 2.0}) {
    for (double kz : {0.0, 0.5}) {
      const auto c = compare_spectrum(40, kz, make_params_dimensionless(b), 0.9, 1e-10);
      worst = std::max(worst, c.max_relative_deviation);
      mismatches += c.multiplicity_mismatches;
    }
  }
  const double t = clock.seconds();
  return {worst <= 1e-10 && mismatches == 0 && t < 10.0,
          fmt::format("N_trunc=40, max rel dev {:.2e}, multiplicity mismatches {}, {:.2f} s", worst, mismatches, t)};
}

Outcome oracle_equivalence() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"fig2a", "fig2b", "fig2c"}) {
    Clock clock;
    auto cfg = parse_config(preset_text(name));
    cfg.oracle = true;
    cfg.oracle_tolerance = 1e-6;
    const auto s = run(cfg, quiet());
    const double t = clock.seconds();
    const bool pass = s.oracle && s.oracle->passed && s.oracle->t_max >= 100.0 - 1e-9 && t < 120.0;
    ok = ok && pass;
    detail += fmt::format("{} {:.1e} L ({:.0f} s); ", name, s.oracle ? s.oracle->max_deviation : -1.0, t);
  }
  return {ok, detail + "tolerance 1e-6 L on [0, 100] t_c"};
}

Outcome cyclotron_limit() {
  const auto params = make_params_dimensionless(0.01);
  const double L = params.magnetic_length;
  GaussianPacket g;
  g.dx = 0.9 * L;
  g.dy = L;
  g.k0x = 1.0 / L;
  const auto d = PacketDecomposition::build(g, params);
  const auto cyc = cyclotron_reference(g, params);
  const double omega = energy(1, 0.0, params) - energy(0, 0.0, params);
  const auto tr = trajectory(d, params, TimeGrid::span(50.0 * kTwoPi / cyc.omega_c, 2048));
  const auto r = classify_peaks(spectrum(tr), params, occupied_levels(d));
  const Peak* dominant = nullptr;
  for (const auto& p : r.peaks) {
    if (p.kind != PeakKind::Static) {
      dominant = &p;
      break;
    }
  }
  double radius = 0.0;
  for (std::size_t i = 0; i < tr.size(); ++i) radius += std::hypot(tr.x[i], tr.y[i]);
  radius /= static_cast<double>(tr.size());
  const double f_err = dominant ? std::abs(dominant->freq / omega - 1.0) : 1.0;
  const double r_err = std::abs(radius / cyc.radius - 1.0);
  return {f_err <= 0.005 && r_err <= 0.02,
          fmt::format("b=0.01: peak {:.6e} vs (E1-E0) {:.6e} (rel {:.1e}); mean radius {:.5g} vs k0x L^2 {:.5g} "
                      "(rel {:.1e})",
                      dominant ? dominant->freq : 0.0, omega, f_err, radius, cyc.radius, r_err)};
}

Outcome kappa_regression() {
  const double targets[] = {16.65, 1.05, 0.116};
  // Omega values solved from the caption kappas, rounded as quoted
  const double omega_hz[] = {1000.0, 3982.0, 11980.0};
  bool ok = true;
  std::string detail;
  double worst_trip = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto trap = TrapConfig::make(0.06, kTwoPi * omega_hz[i], kTwoPi * 68e3, ion_mass(IonSpecies::Ca40),
                                       96e-10, std::nullopt);
    const double k = kappa_of(trap);
    const double rel = std::abs(k / targets[i] - 1.0);
    ok = ok && rel <= 0.01;
    detail += fmt::format("Omega=2pi*{:g} Hz -> kappa {:.4f} ({:.2f}%); ", omega_hz[i], k, 100.0 * rel);

    TrapConstraints fixed;
    fixed.eta = 0.06;
    fixed.omega_tilde = kTwoPi * 68e3;
    fixed.delta = 96e-10;
    const auto p = make_params_from_kappa(targets[i]);
    const auto back = trap_to_dirac(dirac_to_trap(p, fixed)).params;
    worst_trip = std::max({worst_trip, std::abs(back.kappa / p.kappa - 1.0),
                           std::abs(back.field_ratio_b / p.field_ratio_b - 1.0),
                           std::abs(back.magnetic_length / p.magnetic_length - 1.0)});
    // and the other direction
    const auto m = trap_to_dirac(trap);
    TrapConstraints again = fixed;
    const auto trap2 = dirac_to_trap(m.params, again);
    worst_trip = std::max(worst_trip, std::abs(trap2.omega_carrier / trap.omega_carrier - 1.0));
  }
  ok = ok && worst_trip <= 1e-10;
  return {ok, detail + fmt::format("round trip {:.1e}", worst_trip)};
}

Outcome richness_monotonicity() {
  std::vector<int> counts;
  bool strongest_ok = true;
  std::string detail;
  for (const char* name : {"fig2c", "fig2b", "fig2a"}) {
    const auto s = run(parse_config(preset_text(name)), quiet());
    counts.push_back(s.richness);
    const auto* top = s.interband_spectrum.strongest(PeakKind::Interband);
    const bool is01 = top && top->n == 0;
    strongest_ok = strongest_ok && is01;
    detail += fmt::format("{} kappa={:g}: {} peaks, strongest interband {}; ", name, s.params.kappa, s.richness,
                          top ? top->label() : "none");
  }
  const bool mono = counts[0] < counts[1] && counts[1] < counts[2];
  return {mono && strongest_ok, detail + (mono ? "strictly increasing" : "NOT increasing")};
}

Outcome persistence_transience() {
  auto planar = parse_config(preset_text("fig2a"));
  planar.time_units = TimeUnit::Periods;
  planar.t_end = 100.0;
  planar.samples = 8192;
  planar.envelope_periods = 50.0;
  const auto s2 = run(planar, quiet());
  Clock clock;
  const auto s3 = run(parse_config(preset_text("fig1")), quiet());
  const double t3 = clock.seconds();
  if (!s2.envelope || !s3.envelope) return {false, "run did not cover the late window"};
  const double r2 = s2.envelope->ratio();
  const double r3 = s3.envelope->ratio();
  // 10% and 20% are artifact thresholds
  return {r2 >= 0.10 && r3 <= 0.20,
          fmt::format("2+1 fig2a late/early {:.3f} (>= 0.10); 3+1 fig1 late/early {:.3f} (<= 0.20, {:.0f} s)", r2, r3,
                      t3)};
}

Outcome unitary_equivalence() {
  bool ok = true;
  std::string detail;
  for (double b : {1.0, 0.4, 2.0}) {
    for (double kz : {0.0, 0.5}) {
      const auto r = check_transform(make_params_dimensionless(b), 20, kz);
      ok = ok && r.passed && r.spectrum_deviation <= 1e-10 && r.unitarity_deviation <= 1e-14;
      if (b == 1.0 && kz == 0.0) detail = r.summary();
    }
  }
  return {ok, "N_trunc=20, b=1: " + detail + " (also b=0.4, 2 and kz=0.5)"};
}

Outcome numerical_hygiene() {
  bool ok = true;
  std::string detail;
  double worst_sum = 0.0, worst_imag = 0.0, worst_refine = 0.0;
  for (const auto& name : preset_names()) {
    const auto cfg = parse_config(preset_text(name));
    const auto rr = resolve(cfg);
    const auto base = PacketDecomposition::build(rr.packet, rr.params);
    DecompositionOptions fine;
    fine.n_max = 2 * base.n_max();
    fine.kx_nodes = 2 * (base.n_max() + 16);
    fine.xi_nodes = 2 * (base.n_max() / 2 + 16);
    fine.kz.oversample = 2.0;
    fine.kz.points_per_panel = 2 * KzOptions{}.points_per_panel;
    const auto refined = PacketDecomposition::build(rr.packet, rr.params, fine);
    const auto a = trajectory(base, rr.params, rr.grid);
    const auto b = trajectory(refined, rr.params, rr.grid);
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dev = std::max({dev, std::abs(a.x[i] - b.x[i]), std::abs(a.y[i] - b.y[i])});
    dev /= rr.params.magnetic_length;
    const double sum_err = std::abs(base.diagonal_sum() - 1.0);
    worst_sum = std::max(worst_sum, sum_err);
    worst_imag = std::max({worst_imag, a.imag_residue, b.imag_residue});
    worst_refine = std::max(worst_refine, dev);
    ok = ok && sum_err <= 1e-8 && a.imag_residue < 1e-10 && b.imag_residue < 1e-10 && dev < 1e-8;
    detail += fmt::format("{} N={}; ", name, base.n_max());
  }
  return {ok, detail + fmt::format("|sum U_nn - 1| {:.1e}, imag residue {:.1e}, doubled-resolution change {:.1e} L",
                                   worst_sum, worst_imag, worst_refine)};
}

Outcome excitation_counts() {
  const int two = excitation_plan(Dimensionality::TwoPlusOne).pair_count;
  const int three = excitation_plan(Dimensionality::ThreePlusOne).pair_count;
  return {two == 8 && three == 12, fmt::format("2+1: {} pairs, 3+1: {} pairs", two, three)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"spectrum closed form", spectrum_closed_form},
      {"oracle equivalence", oracle_equivalence},
      {"cyclotron limit", cyclotron_limit},
      {"kappa regression", kappa_regression},
      {"richness monotonicity", richness_monotonicity},
      {"persistence / transience", persistence_transience},
      {"unitary equivalence", unitary_equivalence},
      {"numerical hygiene", numerical_hygiene},
      {"excitation-plan counts", excitation_counts},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.passed ? 0 : 1;
    fmt::print("[{}] {}. {}: {}\n", o.passed ? "PASS" : "FAIL", index, name, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
