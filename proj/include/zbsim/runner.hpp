#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zbsim/config.hpp"
#include "zbsim/dynamics.hpp"
#include "zbsim/spectral.hpp"

namespace zb {

struct RunOptions {
  std::optional<std::string> out_dir;
  std::optional<int> threads;
  bool check_oracle = false;
  bool dump_decomposition = false;
  bool write_files = true;
};

struct OracleSummary {
  double max_deviation = 0.0;  // in L
  double tolerance = 0.0;
  double t_max = 0.0;
  int n_trunc = 0;
  bool passed = false;
};

struct RunSummary {
  std::string config_hash;
  std::string report;
  SimParams params;
  GaussianPacket packet;
  int n_max = 0;
  double tail_mass = 0.0;
  double diagonal_sum = 0.0;
  Trajectory trajectory;
  SpectrumReport spectrum;
  SpectrumReport interband_spectrum;
  int richness = 0;
  std::optional<EnvelopeWindows> envelope;
  std::optional<OracleSummary> oracle;
  std::vector<std::string> files;
};

// Runs the analytic engine, the analysis and (if enabled) the oracle, and
// writes the artifacts. Throws ConfigError, ConvergenceError, or
// std::runtime_error on I/O failure.
RunSummary run(const RunConfig& config, const RunOptions& options = {});

}  // namespace zb
