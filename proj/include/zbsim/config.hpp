#pragma once

// Run configuration: a sectioned key = value text format.
//
//   [scenario]  name, mode (2+1 | 3+1)
//   [field]     exactly one of tesla, b, kappa        } or a [trap]
//   [trap]      eta, omega_hz | kappa, omega_tilde_hz,  } section, never both
//               delta_m | trap_freq_hz, species
//   [packet]    units (lambda_c | L | delta), dx, dy, dz, k0x, component
//   [time]      units (t_c | periods), end, samples
//   [numerics]  tail_threshold, n_max_cap, n_max, kx_nodes, xi_nodes,
//               kz_cutoff, kz_points_per_panel, kz_max_panel_phase, threads
//   [output]    directory, position_units (lambda_c | L), plots,
//               dump_decomposition
//   [analysis]  taper, zero_pad, peak_threshold, occupation_threshold,
//               envelope_periods
//   [oracle]    enabled, tolerance (in L), kx_points, t_max
//
// '#' and ';' start comments. Frequencies in the trap section are ordinary
// frequencies (the angular value is 2 pi times larger).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zbsim/ion.hpp"
#include "zbsim/spectral.hpp"
#include "zbsim/units.hpp"
#include "zbsim/wavepacket.hpp"

namespace zb {

enum class FieldSource { Tesla, B, Kappa, Trap };
enum class LengthUnit { LambdaC, L, Delta };
enum class TimeUnit { Tc, Periods };

struct TrapSection {
  double eta = 0.0;
  std::optional<double> omega_hz;
  std::optional<double> kappa;
  double omega_tilde_hz = 0.0;
  std::optional<double> delta_m;
  std::optional<double> trap_freq_hz;
  IonSpecies species = IonSpecies::Ca40;
};

struct RunConfig {
  std::string name = "custom";
  Dimensionality mode = Dimensionality::TwoPlusOne;

  FieldSource source = FieldSource::B;
  double field_value = 0.0;  // tesla, b or kappa
  TrapSection trap;

  LengthUnit packet_units = LengthUnit::LambdaC;
  double dx = 1.0, dy = 1.0, dz = 1.0, k0x = 0.0;
  int component = 2;

  TimeUnit time_units = TimeUnit::Tc;
  double t_end = 100.0;
  std::size_t samples = 4096;

  double tail_threshold = 1e-10;
  int n_max_cap = 400;
  int n_max = -1;
  int kx_nodes = 0;
  int xi_nodes = 0;
  KzOptions kz;
  int threads = 1;

  std::string directory = "out";
  LengthUnit position_units = LengthUnit::LambdaC;
  bool plots = true;
  bool dump_decomposition = false;

  Taper taper = Taper::Hann;
  int zero_pad = 4;
  double peak_threshold = 0.01;
  double occupation_threshold = 1e-8;
  double envelope_periods = 50.0;

  bool oracle = false;
  double oracle_tolerance = 1e-6;
  int oracle_kx_points = 401;
  double oracle_t_max = -1.0;

  // Canonical key = value listing of every resolved setting.
  std::string canonical() const;
  // FNV-1a 64 of canonical(), hex.
  std::string hash() const;
};

// Throws ConfigError with the offending line number.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Checks ranges and cross-field rules; throws ConfigError.
void validate(const RunConfig& config);

// Quantities derived from a valid config.
struct ResolvedRun {
  SimParams params;
  GaussianPacket packet;
  TimeGrid grid;
  std::optional<TrapConfig> trap;
  double length_unit = 1.0;  // output length unit in lambda_c
  std::string length_label;
};

ResolvedRun resolve(const RunConfig& config);

std::uint64_t fnv1a(const std::string& text);

// Built-in scenarios: fig1, fig2a, fig2b, fig2c.
const std::string& preset_text(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace zb
