#include "zbsim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>
#include <fmt/format.h>

#include "zbsim/errors.hpp"
#include "zbsim/landau.hpp"

namespace zb {

namespace {

std::vector<double> window_weights(Taper taper, std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (taper == Taper::Hann && n > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
    }
  }
  return w;
}

// |X_k|^2 scaled to amplitude^2 of the matching cosine, mean^2 at k = 0.
std::vector<double> axis_power(const std::vector<double>& v, const std::vector<double>& w, std::size_t padded) {
  const std::size_t bins = padded / 2 + 1;
  double* in = fftw_alloc_real(padded);
  fftw_complex* out = fftw_alloc_complex(bins);
  // planner calls are not thread-safe
  static std::mutex planner;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(padded), in, out, FFTW_ESTIMATE);
  }
  // the mean is reported exactly at k = 0, otherwise its leakage shows up as sidelobe peaks
  double wsum = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    wsum += w[i];
    mean += v[i] * w[i];
  }
  mean /= wsum;
  for (std::size_t i = 0; i < padded; ++i) in[i] = i < v.size() ? (v[i] - mean) * w[i] : 0.0;
  fftw_execute(plan);
  std::vector<double> p(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    const double amp = std::hypot(out[k][0], out[k][1]) / wsum * (k == 0 ? 1.0 : 2.0);
    p[k] = amp * amp;
  }
  p[0] = mean * mean;
  {
    std::lock_guard<std::mutex> lock(planner);
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return p;
}

}  // namespace

const char* to_string(PeakKind k) {
  switch (k) {
    case PeakKind::Intraband: return "intraband";
    case PeakKind::Interband: return "interband";
    case PeakKind::Static: return "static";
    case PeakKind::Unassigned: return "unassigned";
  }
  return "?";
}

Taper taper_from_string(const std::string& name) {
  if (name == "hann") return Taper::Hann;
  if (name == "rectangular" || name == "none") return Taper::Rectangular;
  throw DomainError("unknown taper '" + name + "'");
}

Series series_from_string(const std::string& name) {
  if (name == "total") return Series::Total;
  if (name == "interband") return Series::Interband;
  if (name == "intraband") return Series::Intraband;
  throw DomainError("unknown series '" + name + "'");
}

std::string Peak::label() const {
  switch (kind) {
    case PeakKind::Intraband: return fmt::format("Intraband({}->{})", n, n + 1);
    case PeakKind::Interband: return fmt::format("Interband({}<->{})", n, n + 1);
    case PeakKind::Static: return "Static";
    case PeakKind::Unassigned: return "Unassigned";
  }
  return "?";
}

const Peak* SpectrumReport::strongest(PeakKind kind) const {
  for (const auto& p : peaks) {
    if (p.kind == kind) return &p;
  }
  return nullptr;
}

SpectrumReport spectrum(const std::vector<double>& times, const std::vector<double>& x,
                        const std::vector<double>& y, const SpectrumOptions& options) {
  const std::size_t n = times.size();
  if (n < 256) throw DomainError(fmt::format("spectrum needs at least 256 samples, got {}", n));
  if (x.size() != n || y.size() != n) throw DomainError("series lengths differ from the time grid");
  if (options.zero_pad < 1) throw DomainError("zero padding factor must be >= 1");
  const double dt = (times.back() - times.front()) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) throw DomainError("time grid must be increasing");
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * std::max(1.0, std::abs(dt))) {
      throw DomainError(fmt::format("non-uniform time grid at sample {}", i));
    }
  }

  const std::size_t padded = n * static_cast<std::size_t>(options.zero_pad);
  const auto w = window_weights(options.taper, n);
  SpectrumReport r;
  r.power_x = axis_power(x, w, padded);
  r.power_y = axis_power(y, w, padded);
  r.duration = dt * static_cast<double>(n);
  r.bin = 2.0 * std::numbers::pi / r.duration;
  const double df = 2.0 * std::numbers::pi / (dt * static_cast<double>(padded));
  const std::size_t bins = r.power_x.size();
  r.freqs.resize(bins);
  std::vector<double> total(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    r.freqs[k] = df * static_cast<double>(k);
    total[k] = r.power_x[k] + r.power_y[k];
  }

  std::vector<Peak> found;
  for (std::size_t k = 0; k < bins; ++k) {
    const double left = k > 0 ? total[k - 1] : -1.0;
    const double right = k + 1 < bins ? total[k + 1] : -1.0;
    if (!(total[k] > 0.0) || total[k] < left || total[k] <= right) continue;
    Peak p;
    p.freq = r.freqs[k];
    p.power = total[k];
    if (k > 0 && k + 1 < bins) {
      const double denom = left - 2.0 * total[k] + right;
      if (denom < 0.0) {
        const double delta = 0.5 * (left - right) / denom;
        p.freq = df * (static_cast<double>(k) + delta);
        p.power = total[k] - 0.25 * (left - right) * delta;
      }
    }
    p.kind = p.freq < r.bin ? PeakKind::Static : PeakKind::Unassigned;
    found.push_back(p);
  }
  double strongest = 0.0;
  for (const auto& p : found) strongest = std::max(strongest, p.power);
  // round-off level
  const double noise = 1e-20 * strongest;
  double reference = 0.0;
  for (const auto& p : found) {
    if (p.kind != PeakKind::Static && p.power > noise) reference = std::max(reference, p.power);
  }
  if (reference == 0.0) reference = strongest;
  for (const auto& p : found) {
    if (p.power > noise && p.power >= options.peak_floor * reference) r.peaks.push_back(p);
  }
  std::stable_sort(r.peaks.begin(), r.peaks.end(), [](const Peak& a, const Peak& b) { return a.power > b.power; });
  return r;
}

SpectrumReport spectrum(const Trajectory& traj, Series series, const SpectrumOptions& options) {
  switch (series) {
    case Series::Interband: return spectrum(traj.times, traj.x_interband, traj.y_interband, options);
    case Series::Intraband: return spectrum(traj.times, traj.x_intraband, traj.y_intraband, options);
    case Series::Total: break;
  }
  return spectrum(traj.times, traj.x, traj.y, options);
}

SpectrumReport classify_peaks(SpectrumReport report, const SimParams& params, const std::vector<int>& occupied,
                              double kz) {
  struct Line {
    double freq;
    PeakKind kind;
    int n;
  };
  std::vector<Line> lines;
  for (int n : occupied) {
    if (std::find(occupied.begin(), occupied.end(), n + 1) == occupied.end()) continue;
    const auto intra = transition_frequency(n, n + 1, 1, 1, kz, params);
    const auto inter = transition_frequency(n, n + 1, -1, 1, kz, params);
    lines.push_back({intra.frequency, PeakKind::Intraband, n});
    lines.push_back({inter.frequency, PeakKind::Interband, n});
  }
  for (auto& p : report.peaks) {
    if (p.kind == PeakKind::Static) continue;
    p.kind = PeakKind::Unassigned;
    p.n = -1;
    double best = report.bin;
    for (const auto& l : lines) {
      const double d = std::abs(p.freq - l.freq);
      if (d <= best) {
        best = d;
        p.kind = l.kind;
        p.n = l.n;
        p.line = l.freq;
      }
    }
  }
  return report;
}

int richness(const SpectrumReport& report, double threshold) {
  double reference = 0.0;
  for (const auto& p : report.peaks) {
    if (p.kind != PeakKind::Static) reference = std::max(reference, p.power);
  }
  if (reference <= 0.0) return 0;
  return static_cast<int>(std::count_if(report.peaks.begin(), report.peaks.end(), [&](const Peak& p) {
    return p.kind != PeakKind::Static && p.power >= threshold * reference;
  }));
}

std::vector<int> occupied_levels(const PacketDecomposition& decomp, double threshold) {
  std::vector<int> out;
  for (int n = 0; n <= decomp.n_max(); ++n) {
    if (decomp.u_diagonal(n) > threshold) out.push_back(n);
  }
  return out;
}

EnvelopeWindows envelope_windows(const Trajectory& traj, double window) {
  if (!(window > 0.0)) throw DomainError("envelope window must be positive");
  if (traj.size() == 0 || traj.times.back() < 2.0 * window * (1.0 - 1e-12)) {
    throw DomainError(fmt::format("trajectory ends before 2T = {}", 2.0 * window));
  }
  EnvelopeWindows e;
  e.window = window;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const double r = std::hypot(traj.x_interband[i], traj.y_interband[i]);
    if (t <= window) e.early_max = std::max(e.early_max, r);
    if (t >= window && t <= 2.0 * window) e.late_max = std::max(e.late_max, r);
  }
  return e;
}

}  // namespace zb
