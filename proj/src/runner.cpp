#include "zbsim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>

#include <fmt/format.h>

#include "zbsim/errors.hpp"
#include "zbsim/ion.hpp"
#include "zbsim/oracle.hpp"
#include "zbsim/output.hpp"

namespace zb {

namespace {

std::string peak_table(const SpectrumReport& r) {
  std::string out = fmt::format("  {:>14} {:>14} {:>14}  {}\n", "omega[1/t_c]", "power", "line", "label");
  for (const auto& p : r.peaks) {
    out += fmt::format("  {:>14.6f} {:>14.6e} {:>14}  {}\n", p.freq, p.power,
                       p.kind == PeakKind::Intraband || p.kind == PeakKind::Interband ? fmt::format("{:.6f}", p.line)
                                                                                      : "-",
                       p.label());
  }
  return out;
}

}  // namespace

RunSummary run(const RunConfig& config_in, const RunOptions& options) {
  RunConfig config = config_in;
  if (options.out_dir) config.directory = *options.out_dir;
  if (options.threads) config.threads = *options.threads;
  if (options.check_oracle) config.oracle = true;
  if (options.dump_decomposition) config.dump_decomposition = true;
  validate(config);
  const ResolvedRun rr = resolve(config);

  RunSummary s;
  s.config_hash = config_in.hash();
  s.params = rr.params;
  s.packet = rr.packet;

  DecompositionOptions dopt;
  dopt.tail_threshold = config.tail_threshold;
  dopt.n_max_cap = config.n_max_cap;
  dopt.n_max = config.n_max;
  dopt.kx_nodes = config.kx_nodes;
  dopt.xi_nodes = config.xi_nodes;
  dopt.kz = config.kz;
  const auto decomp = PacketDecomposition::build(rr.packet, rr.params, dopt);
  s.n_max = decomp.n_max();
  s.tail_mass = decomp.tail_mass();
  s.diagonal_sum = decomp.diagonal_sum();

  TrajectoryOptions topt;
  topt.threads = config.threads;
  s.trajectory = trajectory(decomp, rr.params, rr.grid, topt);
  const auto cyc = cyclotron_reference(rr.packet, rr.params);

  const auto occupied = occupied_levels(decomp, config.occupation_threshold);
  SpectrumOptions sopt;
  sopt.taper = config.taper;
  sopt.zero_pad = config.zero_pad;
  sopt.peak_floor = config.peak_threshold;
  const bool analyse = rr.grid.count >= 256;
  if (analyse) {
    s.spectrum = classify_peaks(spectrum(s.trajectory, Series::Total, sopt), rr.params, occupied);
    s.interband_spectrum = classify_peaks(spectrum(s.trajectory, Series::Interband, sopt), rr.params, occupied);
    s.richness = richness(s.spectrum, config.peak_threshold);
  }
  const double window = config.envelope_periods * 2.0 * std::numbers::pi / cyc.omega_c;
  if (rr.grid.end() >= 2.0 * window * (1.0 - 1e-12)) s.envelope = envelope_windows(s.trajectory, window);

  std::optional<OracleResult> oracle;
  if (config.oracle) {
    OracleOptions oopt;
    oopt.kx_points = config.oracle_kx_points;
    oopt.kz = config.kz;
    double t_max = config.oracle_t_max > 0.0 ? config.oracle_t_max : rr.grid.end();
    t_max = std::min(t_max, rr.grid.end());
    TimeGrid og = rr.grid;
    og.count = 1;
    while (og.count < rr.grid.count && rr.grid.at(og.count) <= t_max * (1.0 + 1e-12)) ++og.count;
    oopt.t_max_3d = og.end();
    oracle = oracle_run(rr.packet, rr.params, og, oopt);
    OracleSummary os;
    os.tolerance = config.oracle_tolerance;
    os.t_max = og.end();
    os.n_trunc = oracle->n_trunc;
    for (std::size_t i = 0; i < og.count; ++i) {
      const double d = std::hypot(s.trajectory.x[i] - oracle->trajectory.x[i], s.trajectory.y[i] - oracle->trajectory.y[i]);
      os.max_deviation = std::max(os.max_deviation, d / rr.params.magnetic_length);
    }
    os.passed = os.max_deviation <= os.tolerance;
    s.oracle = os;
  }

  // report
  const auto& p = rr.params;
  std::string rep = file_header(s.config_hash);
  rep += fmt::format("scenario        {}\nmode            {}\n", config.name, to_string(p.dimensionality));
  rep += fmt::format("b               {:.10g}\nkappa           {:.10g}\nL               {:.10g} lambda_c\n",
                     p.field_ratio_b, p.kappa, p.magnetic_length);
  if (config.source == FieldSource::Tesla) {
    rep += fmt::format("B               {:.6g} T\nL (SI)          {:.6e} m\nhbar omega_c    {:.6e} eV\n",
                       config.field_value, p.magnetic_length * electron_compton_wavelength(),
                       2.0 * p.kappa * electron_rest_energy() / si::electron_volt);
  }
  if (rr.trap) {
    const auto& t = *rr.trap;
    const auto m = trap_to_dirac(t, p.dimensionality);
    const double two_pi = 2.0 * std::numbers::pi;
    rep += fmt::format("trap            {} eta={} Omega~=2pi*{:.6g} Hz Delta={:.6e} m nu=2pi*{:.6g} Hz\n",
                       to_string(config.trap.species), t.eta, t.omega_tilde / two_pi, t.delta, t.trap_freq / two_pi);
    rep += fmt::format("Omega           2pi*{:.6f} Hz{}\n", t.omega_carrier / two_pi,
                       config.trap.kappa ? "  [solved from kappa]" : "");
    rep += fmt::format("kappa_of(trap)  {:.10g}\n", kappa_of(t));
    rep += fmt::format("simulated c     {:.6e} m/s\nsimulated l_c   {:.6e} m ({:.4g} Delta)\nsimulated t_c   {:.6e} s\n",
                       m.speed, m.compton_wavelength, m.compton_wavelength / t.delta, m.compton_time);
  }
  rep += fmt::format("packet          dx={:.6g} dy={:.6g}{} k0x={:.6g} (lambda_c units) component={}\n",
                     rr.packet.dx, rr.packet.dy,
                     p.dimensionality == Dimensionality::ThreePlusOne ? fmt::format(" dz={:.6g}", rr.packet.dz) : "",
                     rr.packet.k0x, rr.packet.component);
  rep += fmt::format("time grid       [0, {:.6g}] t_c, {} samples\n", rr.grid.end(), rr.grid.count);
  rep += fmt::format("N_max           {}\ntail mass       {:.3e}\nsum U_nn        {:.15f}\n", s.n_max, s.tail_mass,
                     s.diagonal_sum);
  rep += fmt::format("imag residue    {:.3e}\n", s.trajectory.imag_residue);
  rep += fmt::format("cyclotron       omega_c={:.10g} 1/t_c, radius k0x L^2={:.10g} lambda_c\n", cyc.omega_c,
                     cyc.radius);
  if (analyse) {
    rep += fmt::format("\nspectrum (bin {:.4g} 1/t_c, threshold {} of strongest), richness {}\n", s.spectrum.bin,
                       config.peak_threshold, s.richness);
    rep += peak_table(s.spectrum);
    rep += "interband-filtered spectrum\n" + peak_table(s.interband_spectrum);
    const auto* strongest = s.interband_spectrum.strongest(PeakKind::Interband);
    rep += fmt::format("strongest interband line  {}\n", strongest ? strongest->label() : "none");
  } else {
    rep += "\nspectrum skipped (fewer than 256 samples)\n";
  }
  if (s.envelope) {
    rep += fmt::format("\ninterband envelope, T = {} periods = {:.6g} t_c: early max {:.6e}, late max {:.6e}, "
                       "late/early {:.4f}\n",
                       config.envelope_periods, window, s.envelope->early_max, s.envelope->late_max,
                       s.envelope->ratio());
  }
  rep += "\n" + excitation_plan(p.dimensionality).table();
  if (s.oracle) {
    rep += fmt::format("\noracle          n_trunc={} on [0, {:.6g}] t_c: max |analytic - oracle| = {:.3e} L "
                       "(tolerance {:.1e}) {}\n",
                       s.oracle->n_trunc, s.oracle->t_max, s.oracle->max_deviation, s.oracle->tolerance,
                       s.oracle->passed ? "ok" : "MISMATCH");
  }
  rep += "\nprovenance      " + s.trajectory.provenance + "\n";
  s.report = rep;

  if (options.write_files) {
    namespace fs = std::filesystem;
    const fs::path dir(config.directory);
    fs::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& content) {
      const auto path = (dir / name).string();
      write_text(path, content);
      s.files.push_back(path);
    };
    put("trajectory.csv", trajectory_csv(s.trajectory, rr.length_unit, rr.length_label, s.config_hash));
    if (analyse) put("spectrum.csv", spectrum_csv(s.spectrum, s.config_hash));
    put("report.txt", s.report);
    if (config.plots) {
      put("trajectory.svg", trajectory_svg(s.trajectory, rr.length_unit, rr.length_label, s.config_hash));
      put("orbit.svg", orbit_svg(s.trajectory, rr.length_unit, rr.length_label, cyc.radius, s.config_hash));
      if (analyse) put("spectrum.svg", spectrum_svg(s.spectrum, s.config_hash));
    }
    if (config.dump_decomposition) {
      std::string f = file_header(s.config_hash) + "n,kx,weight,F\n";
      for (int n = 0; n <= decomp.n_max(); ++n) {
        for (std::size_t i = 0; i < decomp.kx_nodes().size(); ++i) {
          f += fmt::format("{},{},{},{}\n", n, csv_number(decomp.kx_nodes()[i]), csv_number(decomp.kx_weights()[i]),
                           csv_number(decomp.f(n, i)));
        }
      }
      put("f_table.csv", f);
      std::string u = file_header(s.config_hash) + "n,U_nn,U_n_n+1\n";
      for (int n = 0; n <= decomp.n_max(); ++n) {
        u += fmt::format("{},{},{}\n", n, csv_number(decomp.u_diagonal(n)),
                         n < decomp.n_max() ? csv_number(decomp.u_super(n)) : "");
      }
      put("u_band.csv", u);
    }
    if (oracle) {
      std::string e = file_header(s.config_hash) + "index,E\n";
      for (std::size_t i = 0; i < oracle->eigenvalues.size(); ++i) {
        e += fmt::format("{},{}\n", i, csv_number(oracle->eigenvalues[i]));
      }
      put("oracle_eigenvalues.csv", e);
    }
  }
  return s;
}

}  // namespace zb
