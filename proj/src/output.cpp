#include "zbsim/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include <fmt/format.h>

namespace zb {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// 1-2-5 tick spacing.
double tick_step(double span, int target) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string file_header(const std::string& config_hash, const char* comment) {
  return fmt::format("{} zbsim {} config={}\n", comment, kVersion, config_hash);
}

std::string csv_number(double v) { return fmt::format("{:.17g}", v); }

std::string trajectory_csv(const Trajectory& traj, double length_unit, const std::string& length_label,
                           const std::string& config_hash) {
  std::string out = file_header(config_hash);
  out += fmt::format("# mode {}, t in t_c, positions in {}\n", to_string(traj.mode), length_label);
  out += "t,x,y,x_interband,y_interband,x_intraband,y_intraband\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out += fmt::format("{},{},{},{},{},{},{}\n", csv_number(traj.times[i]), csv_number(traj.x[i] / length_unit),
                       csv_number(traj.y[i] / length_unit), csv_number(traj.x_interband[i] / length_unit),
                       csv_number(traj.y_interband[i] / length_unit), csv_number(traj.x_intraband[i] / length_unit),
                       csv_number(traj.y_intraband[i] / length_unit));
  }
  return out;
}

std::string spectrum_csv(const SpectrumReport& report, const std::string& config_hash) {
  std::vector<std::string> labels(report.freqs.size());
  if (report.freqs.size() > 1) {
    const double df = report.freqs[1] - report.freqs[0];
    for (const auto& p : report.peaks) {
      const auto k = static_cast<std::size_t>(std::lround(p.freq / df));
      if (k < labels.size() && labels[k].empty()) labels[k] = p.label();
    }
  }
  std::string out = file_header(config_hash);
  out += "# angular frequency in 1/t_c; power = squared amplitude\n";
  out += "freq,power_x,power_y,label\n";
  for (std::size_t k = 0; k < report.freqs.size(); ++k) {
    out += fmt::format("{},{},{},{}\n", csv_number(report.freqs[k]), csv_number(report.power_x[k]),
                       csv_number(report.power_y[k]), labels[k]);
  }
  return out;
}

std::string render_svg(const PlotSpec& spec, const std::string& config_hash) {
  const double left = 80, right = 150, top = 40, bottom = 55;
  const double pw = spec.width - left - right;
  const double ph = spec.height - top - bottom;

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : spec.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 <= 0.0) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 <= 0.0) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  if (spec.equal_aspect) {
    const double sx = (x1 - x0) / pw, sy = (y1 - y0) / ph;
    const double s = std::max(sx, sy);
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    x0 = cx - 0.5 * s * pw;
    x1 = cx + 0.5 * s * pw;
    y0 = cy - 0.5 * s * ph;
    y1 = cy + 0.5 * s * ph;
  }
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

  std::string out = file_header(config_hash, "<!--");
  out.back() = ' ';
  out += "-->\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      spec.width, spec.height);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += fmt::format("<text x=\"{:.1f}\" y=\"22\" font-size=\"15\">{}</text>\n", left, escape(spec.title));
  out += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" "
                     "stroke=\"black\"/>\n",
                     left, top, pw, ph);

  const double xs = tick_step(x1 - x0, 6);
  for (double t = std::ceil(x0 / xs) * xs; t <= x1 + 1e-9 * xs; t += xs) {
    out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"#ddd\"/>\n",
                       px(t), top, top + ph);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.4g}</text>\n", px(t),
                       top + ph + 16, std::abs(t) < 1e-12 * xs ? 0.0 : t);
  }
  const double ys = tick_step(y1 - y0, 5);
  for (double t = std::ceil(y0 / ys) * ys; t <= y1 + 1e-9 * ys; t += ys) {
    out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"#ddd\"/>\n",
                       left, py(t), left + pw);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.4g}</text>\n", left - 6,
                       py(t) + 4, std::abs(t) < 1e-12 * ys ? 0.0 : t);
  }
  out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", left + 0.5 * pw,
                     spec.height - 12, escape(spec.x_label));
  out += fmt::format("<text transform=\"translate(18,{:.1f}) rotate(-90)\" text-anchor=\"middle\">{}</text>\n",
                     top + 0.5 * ph, escape(spec.y_label));

  int legend = 0;
  for (const auto& s : spec.series) {
    std::string pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      pts += fmt::format("{:.2f},{:.2f} ", px(s.x[i]), py(s.y[i]));
    }
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.2\"{} points=\"{}\"/>\n", s.color,
                       s.dashed ? " stroke-dasharray=\"5,4\"" : "", pts);
    if (!s.name.empty()) {
      const double ly = top + 14 + 18 * legend++;
      out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"{3}\"{4}/>\n",
                         left + pw + 10, ly, left + pw + 34, s.color, s.dashed ? " stroke-dasharray=\"5,4\"" : "");
      out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", left + pw + 40, ly + 4, escape(s.name));
    }
  }
  for (const auto& n : spec.notes) {
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-size=\"10\" text-anchor=\"middle\">{}</text>\n",
                       px(n.x), py(n.y) - 6, escape(n.text));
  }
  out += "</svg>\n";
  return out;
}

std::string trajectory_svg(const Trajectory& traj, double length_unit, const std::string& length_label,
                           const std::string& config_hash) {
  PlotSpec spec;
  spec.title = fmt::format("<X(t)>, <Y(t)> ({})", to_string(traj.mode));
  spec.x_label = "t [t_c]";
  spec.y_label = "position [" + length_label + "]";
  Series2D x{traj.times, {}, "<X>", "#1f5fbf"};
  Series2D y{traj.times, {}, "<Y>", "#c0392b"};
  for (std::size_t i = 0; i < traj.size(); ++i) {
    x.y.push_back(traj.x[i] / length_unit);
    y.y.push_back(traj.y[i] / length_unit);
  }
  spec.series = {x, y};
  return render_svg(spec, config_hash);
}

std::string orbit_svg(const Trajectory& traj, double length_unit, const std::string& length_label,
                      double reference_radius, const std::string& config_hash) {
  PlotSpec spec;
  spec.title = "orbit <Y> vs <X>";
  spec.x_label = "<X> [" + length_label + "]";
  spec.y_label = "<Y> [" + length_label + "]";
  spec.equal_aspect = true;
  Series2D orbit{{}, {}, "orbit", "#1f5fbf"};
  for (std::size_t i = 0; i < traj.size(); ++i) {
    orbit.x.push_back(traj.x[i] / length_unit);
    orbit.y.push_back(traj.y[i] / length_unit);
  }
  Series2D circle{{}, {}, "k0x L^2", "#888888", true};
  const double r = reference_radius / length_unit;
  for (int i = 0; i <= 256; ++i) {
    const double a = 2.0 * std::numbers::pi * i / 256.0;
    circle.x.push_back(r * std::cos(a));
    circle.y.push_back(r * std::sin(a));
  }
  spec.series = {circle, orbit};
  return render_svg(spec, config_hash);
}

std::string spectrum_svg(const SpectrumReport& report, const std::string& config_hash) {
  PlotSpec spec;
  spec.title = "power spectrum";
  spec.x_label = "omega [1/t_c]";
  spec.y_label = "log10 power";
  double top = 0.0;
  for (std::size_t k = 0; k < report.freqs.size(); ++k) top = std::max(top, report.power_x[k] + report.power_y[k]);
  const double floor = top > 0.0 ? top * 1e-8 : 1e-300;
  // cut the tail above the highest peak
  double f_max = report.freqs.empty() ? 1.0 : report.freqs.back();
  if (!report.peaks.empty()) {
    double hi = 0.0;
    for (const auto& p : report.peaks) hi = std::max(hi, p.freq);
    f_max = std::min(f_max, 1.25 * hi + 4.0 * report.bin);
  }
  Series2D s{{}, {}, "", "#1f5fbf"};
  for (std::size_t k = 0; k < report.freqs.size() && report.freqs[k] <= f_max; ++k) {
    s.x.push_back(report.freqs[k]);
    s.y.push_back(std::log10(std::max(floor, report.power_x[k] + report.power_y[k])));
  }
  spec.series = {s};
  for (const auto& p : report.peaks) {
    if (p.kind == PeakKind::Static) continue;
    spec.notes.push_back({p.freq, std::log10(std::max(floor, p.power)), p.label()});
  }
  return render_svg(spec, config_hash);
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << content;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace zb
