#pragma once

// Frequency content of trajectories: windowed DFT per axis, peak search on
// the summed power, and assignment of peaks to Landau transitions.
//
// Frequencies are angular, in 1/t_c. Power is normalized so that a
// unit-amplitude cosine gives a peak of power 1 on its axis.

#include <string>
#include <vector>

#include "zbsim/dynamics.hpp"
#include "zbsim/units.hpp"
#include "zbsim/wavepacket.hpp"

namespace zb {

enum class Taper { Hann, Rectangular };
enum class Series { Total, Interband, Intraband };
// Static marks the zero-frequency line (the orbit centre).
enum class PeakKind { Intraband, Interband, Static, Unassigned };

const char* to_string(PeakKind k);
Taper taper_from_string(const std::string& name);
Series series_from_string(const std::string& name);

struct Peak {
  double freq = 0.0;
  double power = 0.0;  // power_x + power_y at the refined peak
  PeakKind kind = PeakKind::Unassigned;
  int n = -1;          // lower level of the n <-> n+1 pair
  double line = 0.0;   // closed-form frequency of the assigned transition

  std::string label() const;
};

struct SpectrumOptions {
  Taper taper = Taper::Hann;
  int zero_pad = 4;
  double peak_floor = 0.01;  // relative to the strongest non-static peak
};

struct SpectrumReport {
  std::vector<double> freqs;
  std::vector<double> power_x;
  std::vector<double> power_y;
  std::vector<Peak> peaks;  // sorted by decreasing power
  double bin = 0.0;         // 2 pi / (samples * dt), the unpadded resolution
  double duration = 0.0;

  const Peak* strongest(PeakKind kind) const;
};

// Throws DomainError for fewer than 256 samples or a non-uniform grid.
SpectrumReport spectrum(const std::vector<double>& times, const std::vector<double>& x,
                        const std::vector<double>& y, const SpectrumOptions& options = {});
SpectrumReport spectrum(const Trajectory& traj, Series series = Series::Total,
                        const SpectrumOptions& options = {});

// Labels every peak with the nearest |dn| = 1 line among the occupied
// levels (both n and n+1 occupied), within one bin; otherwise Unassigned.
SpectrumReport classify_peaks(SpectrumReport report, const SimParams& params, const std::vector<int>& occupied,
                              double kz = 0.0);

// Non-static peaks with power >= threshold * strongest non-static peak.
int richness(const SpectrumReport& report, double threshold = 0.01);

// Levels with U_{n,n} above the threshold.
std::vector<int> occupied_levels(const PacketDecomposition& decomp, double threshold = 1e-8);

// Interband envelope hypot(x_interband, y_interband): maximum in [0, T] and
// in [T, 2T].
struct EnvelopeWindows {
  double window = 0.0;
  double early_max = 0.0;
  double late_max = 0.0;
  double ratio() const { return early_max > 0.0 ? late_max / early_max : 0.0; }
};

// Throws DomainError when the trajectory does not reach 2T.
EnvelopeWindows envelope_windows(const Trajectory& traj, double window);

}  // namespace zb
