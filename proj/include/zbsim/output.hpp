#pragma once

// CSV tables and native SVG plots. Every file starts with a header comment
// carrying the artifact version and the config hash.

#include <string>
#include <vector>

#include "zbsim/dynamics.hpp"
#include "zbsim/spectral.hpp"

namespace zb {

inline constexpr const char* kVersion = "0.1.0";

std::string file_header(const std::string& config_hash, const char* comment = "#");

// 17 significant digits.
std::string csv_number(double v);

// Columns t, x, y, x_interband, y_interband, x_intraband, y_intraband;
// lengths divided by `length_unit` (in lambda_c).
std::string trajectory_csv(const Trajectory& traj, double length_unit, const std::string& length_label,
                           const std::string& config_hash);

// Columns freq, power_x, power_y, label; the label is set on the bin closest
// to each reported peak.
std::string spectrum_csv(const SpectrumReport& report, const std::string& config_hash);

struct Series2D {
  std::vector<double> x;
  std::vector<double> y;
  std::string name;
  std::string color;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  double width = 720.0;
  double height = 420.0;
  bool equal_aspect = false;
  std::vector<Series2D> series;
  // text annotations at data coordinates
  struct Note {
    double x;
    double y;
    std::string text;
  };
  std::vector<Note> notes;
};

std::string render_svg(const PlotSpec& spec, const std::string& config_hash);

std::string trajectory_svg(const Trajectory& traj, double length_unit, const std::string& length_label,
                           const std::string& config_hash);
std::string orbit_svg(const Trajectory& traj, double length_unit, const std::string& length_label,
                      double reference_radius, const std::string& config_hash);
std::string spectrum_svg(const SpectrumReport& report, const std::string& config_hash);

void write_text(const std::string& path, const std::string& content);

}  // namespace zb
