#include "zbsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "zbsim/dynamics.hpp"
#include "zbsim/errors.hpp"

namespace zb {

namespace {

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"scenario", {"name", "mode"}},
      {"field", {"tesla", "b", "kappa"}},
      {"trap", {"eta", "omega_hz", "kappa", "omega_tilde_hz", "delta_m", "trap_freq_hz", "species"}},
      {"packet", {"units", "dx", "dy", "dz", "k0x", "component"}},
      {"time", {"units", "end", "samples"}},
      {"numerics",
       {"tail_threshold", "n_max_cap", "n_max", "kx_nodes", "xi_nodes", "kz_cutoff", "kz_points_per_panel",
        "kz_max_panel_phase", "threads"}},
      {"output", {"directory", "position_units", "plots", "dump_decomposition"}},
      {"analysis", {"taper", "zero_pad", "peak_threshold", "occupation_threshold", "envelope_periods"}},
      {"oracle", {"enabled", "tolerance", "kx_points", "t_max"}},
  };
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const Entry& e, const std::string& key) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ConfigError(fmt::format("'{}' expects a number, got '{}'", key, e.value), e.line);
  }
  return v;
}

long to_int(const Entry& e, const std::string& key) {
  long v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError(fmt::format("'{}' expects an integer, got '{}'", key, e.value), e.line);
  }
  return v;
}

bool to_bool(const Entry& e, const std::string& key) {
  if (e.value == "true" || e.value == "yes" || e.value == "on" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "off" || e.value == "0") return false;
  throw ConfigError(fmt::format("'{}' expects true or false, got '{}'", key, e.value), e.line);
}

LengthUnit to_length_unit(const Entry& e, const std::string& key, bool allow_delta) {
  if (e.value == "lambda_c") return LengthUnit::LambdaC;
  if (e.value == "L") return LengthUnit::L;
  if (allow_delta && e.value == "delta") return LengthUnit::Delta;
  throw ConfigError(fmt::format("'{}' must be lambda_c, L{}; got '{}'", key, allow_delta ? " or delta" : "",
                                e.value),
                    e.line);
}

const char* length_name(LengthUnit u) {
  switch (u) {
    case LengthUnit::LambdaC: return "lambda_c";
    case LengthUnit::L: return "L";
    case LengthUnit::Delta: return "delta";
  }
  return "?";
}

const char* source_name(FieldSource s) {
  switch (s) {
    case FieldSource::Tesla: return "tesla";
    case FieldSource::B: return "b";
    case FieldSource::Kappa: return "kappa";
    case FieldSource::Trap: return "trap";
  }
  return "?";
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string opt(const std::optional<double>& v) { return v ? num(*v) : "-"; }

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

RunConfig parse_config(const std::string& text) {
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_lines;
  std::istringstream in(text);
  std::string raw;
  std::string current;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto cut = raw.find_first_of("#;");
    const std::string line = trim(cut == std::string::npos ? raw : raw.substr(0, cut));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("unterminated section header", line_no);
      current = trim(line.substr(1, line.size() - 2));
      if (!schema().count(current)) throw ConfigError(fmt::format("unknown section [{}]", current), line_no);
      if (section_lines.count(current)) throw ConfigError(fmt::format("section [{}] repeated", current), line_no);
      section_lines[current] = line_no;
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value", line_no);
    if (current.empty()) throw ConfigError("key outside of any section", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!schema().at(current).count(key)) {
      throw ConfigError(fmt::format("unknown key '{}' in [{}]", key, current), line_no);
    }
    if (value.empty()) throw ConfigError(fmt::format("empty value for '{}'", key), line_no);
    auto& sec = sections[current];
    if (sec.count(key)) throw ConfigError(fmt::format("duplicate key '{}'", key), line_no);
    sec[key] = Entry{value, line_no};
  }

  RunConfig c;
  auto get = [&](const std::string& s, const std::string& k) -> const Entry* {
    auto it = sections.find(s);
    if (it == sections.end()) return nullptr;
    auto jt = it->second.find(k);
    return jt == it->second.end() ? nullptr : &jt->second;
  };
  auto num_or = [&](const std::string& s, const std::string& k, double& out) {
    if (const auto* e = get(s, k)) out = to_double(*e, k);
  };
  auto int_or = [&](const std::string& s, const std::string& k, int& out) {
    if (const auto* e = get(s, k)) out = static_cast<int>(to_int(*e, k));
  };
  auto bool_or = [&](const std::string& s, const std::string& k, bool& out) {
    if (const auto* e = get(s, k)) out = to_bool(*e, k);
  };

  if (const auto* e = get("scenario", "name")) c.name = e->value;
  if (const auto* e = get("scenario", "mode")) {
    if (e->value == "2+1") c.mode = Dimensionality::TwoPlusOne;
    else if (e->value == "3+1") c.mode = Dimensionality::ThreePlusOne;
    else throw ConfigError("mode must be 2+1 or 3+1, got '" + e->value + "'", e->line);
  }

  // field source: exactly one
  std::vector<std::pair<FieldSource, const Entry*>> sources;
  for (auto [key, src] : {std::pair{"tesla", FieldSource::Tesla}, std::pair{"b", FieldSource::B},
                          std::pair{"kappa", FieldSource::Kappa}}) {
    if (const auto* e = get("field", key)) sources.emplace_back(src, e);
  }
  const bool has_trap = section_lines.count("trap") > 0;
  const std::size_t count = sources.size() + (has_trap ? 1 : 0);
  if (count != 1) {
    int line = 0;
    if (count > 1) {
      // point at the later of the competing entries
      std::vector<int> lines;
      for (const auto& [src, e] : sources) lines.push_back(e->line);
      if (has_trap) lines.push_back(section_lines.at("trap"));
      std::sort(lines.begin(), lines.end());
      line = lines[1];
    }
    throw ConfigError(fmt::format("exactly one field source (tesla, b, kappa or a [trap] section) is required, "
                                  "found {}",
                                  count),
                      line);
  }
  if (has_trap) {
    c.source = FieldSource::Trap;
    const int tl = section_lines.at("trap");
    auto need = [&](const char* k) -> const Entry& {
      const auto* e = get("trap", k);
      if (!e) throw ConfigError(fmt::format("[trap] needs '{}'", k), tl);
      return *e;
    };
    c.trap.eta = to_double(need("eta"), "eta");
    c.trap.omega_tilde_hz = to_double(need("omega_tilde_hz"), "omega_tilde_hz");
    if (const auto* e = get("trap", "omega_hz")) c.trap.omega_hz = to_double(*e, "omega_hz");
    if (const auto* e = get("trap", "kappa")) c.trap.kappa = to_double(*e, "kappa");
    if (c.trap.omega_hz.has_value() == c.trap.kappa.has_value()) {
      throw ConfigError("[trap] needs exactly one of omega_hz and kappa", tl);
    }
    if (const auto* e = get("trap", "delta_m")) c.trap.delta_m = to_double(*e, "delta_m");
    if (const auto* e = get("trap", "trap_freq_hz")) c.trap.trap_freq_hz = to_double(*e, "trap_freq_hz");
    if (!c.trap.delta_m && !c.trap.trap_freq_hz) throw ConfigError("[trap] needs delta_m or trap_freq_hz", tl);
    if (const auto* e = get("trap", "species")) {
      try {
        c.trap.species = species_from_string(e->value);
      } catch (const DomainError& err) {
        throw ConfigError(err.what(), e->line);
      }
    }
  } else {
    c.source = sources[0].first;
    c.field_value = to_double(*sources[0].second, source_name(c.source));
  }

  if (const auto* e = get("packet", "units")) c.packet_units = to_length_unit(*e, "units", true);
  num_or("packet", "dx", c.dx);
  num_or("packet", "dy", c.dy);
  num_or("packet", "dz", c.dz);
  num_or("packet", "k0x", c.k0x);
  int_or("packet", "component", c.component);

  if (const auto* e = get("time", "units")) {
    if (e->value == "t_c") c.time_units = TimeUnit::Tc;
    else if (e->value == "periods") c.time_units = TimeUnit::Periods;
    else throw ConfigError("time units must be t_c or periods, got '" + e->value + "'", e->line);
  }
  num_or("time", "end", c.t_end);
  if (const auto* e = get("time", "samples")) {
    const long s = to_int(*e, "samples");
    if (s < 1) throw ConfigError("samples must be >= 1", e->line);
    c.samples = static_cast<std::size_t>(s);
  }

  num_or("numerics", "tail_threshold", c.tail_threshold);
  int_or("numerics", "n_max_cap", c.n_max_cap);
  int_or("numerics", "n_max", c.n_max);
  int_or("numerics", "kx_nodes", c.kx_nodes);
  int_or("numerics", "xi_nodes", c.xi_nodes);
  num_or("numerics", "kz_cutoff", c.kz.cutoff);
  int_or("numerics", "kz_points_per_panel", c.kz.points_per_panel);
  num_or("numerics", "kz_max_panel_phase", c.kz.max_panel_phase);
  int_or("numerics", "threads", c.threads);

  if (const auto* e = get("output", "directory")) c.directory = e->value;
  if (const auto* e = get("output", "position_units")) c.position_units = to_length_unit(*e, "position_units", false);
  bool_or("output", "plots", c.plots);
  bool_or("output", "dump_decomposition", c.dump_decomposition);

  if (const auto* e = get("analysis", "taper")) {
    try {
      c.taper = taper_from_string(e->value);
    } catch (const DomainError& err) {
      throw ConfigError(err.what(), e->line);
    }
  }
  int_or("analysis", "zero_pad", c.zero_pad);
  num_or("analysis", "peak_threshold", c.peak_threshold);
  num_or("analysis", "occupation_threshold", c.occupation_threshold);
  num_or("analysis", "envelope_periods", c.envelope_periods);

  bool_or("oracle", "enabled", c.oracle);
  num_or("oracle", "tolerance", c.oracle_tolerance);
  int_or("oracle", "kx_points", c.oracle_kx_points);
  num_or("oracle", "t_max", c.oracle_t_max);

  // range checks carry the line of the offending key
  auto line_of = [&](const std::string& s, const std::string& k) {
    const auto* e = get(s, k);
    return e ? e->line : 0;
  };
  try {
    validate(c);
  } catch (const ConfigError& err) {
    if (err.line() > 0) throw;
    // map the message key back to its line when possible
    const std::string what = err.what();
    for (const auto& [sec, keys] : schema()) {
      for (const auto& k : keys) {
        if (what.rfind(k + " ", 0) == 0 && line_of(sec, k) > 0) throw ConfigError(what, line_of(sec, k));
      }
    }
    throw;
  }
  return c;
}

void validate(const RunConfig& c) {
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0)) throw ConfigError(fmt::format("{} must be positive, got {}", key, v));
  };
  switch (c.source) {
    case FieldSource::Tesla: positive(c.field_value, "tesla"); break;
    case FieldSource::B: positive(c.field_value, "b"); break;
    case FieldSource::Kappa: positive(c.field_value, "kappa"); break;
    case FieldSource::Trap:
      positive(c.trap.eta, "eta");
      positive(c.trap.omega_tilde_hz, "omega_tilde_hz");
      if (c.trap.omega_hz) positive(*c.trap.omega_hz, "omega_hz");
      if (c.trap.kappa) positive(*c.trap.kappa, "kappa");
      if (c.trap.delta_m) positive(*c.trap.delta_m, "delta_m");
      if (c.trap.trap_freq_hz) positive(*c.trap.trap_freq_hz, "trap_freq_hz");
      break;
  }
  positive(c.dx, "dx");
  positive(c.dy, "dy");
  if (c.mode == Dimensionality::ThreePlusOne) positive(c.dz, "dz");
  if (c.component < 1 || c.component > 4) throw ConfigError("component must be 1..4");
  if (c.component != 2) throw ConfigError("component other than 2 is not supported by the analytic engine");
  if (!(c.t_end >= 0.0)) throw ConfigError("end must be non-negative");
  if (c.t_end == 0.0 && c.samples != 1) throw ConfigError("end = 0 needs samples = 1");
  positive(c.tail_threshold, "tail_threshold");
  if (c.n_max_cap < 1) throw ConfigError("n_max_cap must be >= 1");
  if (c.n_max == 0 || c.n_max < -1) throw ConfigError("n_max must be positive (or omitted)");
  if (c.kx_nodes < 0) throw ConfigError("kx_nodes must be >= 0");
  if (c.xi_nodes < 0) throw ConfigError("xi_nodes must be >= 0");
  positive(c.kz.cutoff, "kz_cutoff");
  if (c.kz.points_per_panel < 2) throw ConfigError("kz_points_per_panel must be >= 2");
  positive(c.kz.max_panel_phase, "kz_max_panel_phase");
  if (c.threads < 1) throw ConfigError("threads must be >= 1");
  if (c.zero_pad < 1) throw ConfigError("zero_pad must be >= 1");
  positive(c.peak_threshold, "peak_threshold");
  positive(c.occupation_threshold, "occupation_threshold");
  positive(c.envelope_periods, "envelope_periods");
  positive(c.oracle_tolerance, "tolerance");
  if (c.oracle_kx_points < 3) throw ConfigError("kx_points must be >= 3");
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string RunConfig::canonical() const {
  std::string s;
  auto add = [&](const std::string& k, const std::string& v) { s += k + "=" + v + "\n"; };
  add("scenario.name", name);
  add("scenario.mode", to_string(mode));
  add("field.source", source_name(source));
  if (source == FieldSource::Trap) {
    add("trap.eta", num(trap.eta));
    add("trap.omega_hz", opt(trap.omega_hz));
    add("trap.kappa", opt(trap.kappa));
    add("trap.omega_tilde_hz", num(trap.omega_tilde_hz));
    add("trap.delta_m", opt(trap.delta_m));
    add("trap.trap_freq_hz", opt(trap.trap_freq_hz));
    add("trap.species", to_string(trap.species));
  } else {
    add("field.value", num(field_value));
  }
  add("packet.units", length_name(packet_units));
  add("packet.dx", num(dx));
  add("packet.dy", num(dy));
  add("packet.dz", num(dz));
  add("packet.k0x", num(k0x));
  add("packet.component", std::to_string(component));
  add("time.units", time_units == TimeUnit::Tc ? "t_c" : "periods");
  add("time.end", num(t_end));
  add("time.samples", std::to_string(samples));
  add("numerics.tail_threshold", num(tail_threshold));
  add("numerics.n_max_cap", std::to_string(n_max_cap));
  add("numerics.n_max", std::to_string(n_max));
  add("numerics.kx_nodes", std::to_string(kx_nodes));
  add("numerics.xi_nodes", std::to_string(xi_nodes));
  add("numerics.kz_cutoff", num(kz.cutoff));
  add("numerics.kz_points_per_panel", std::to_string(kz.points_per_panel));
  add("numerics.kz_max_panel_phase", num(kz.max_panel_phase));
  add("output.position_units", length_name(position_units));
  add("analysis.taper", taper == Taper::Hann ? "hann" : "rectangular");
  add("analysis.zero_pad", std::to_string(zero_pad));
  add("analysis.peak_threshold", num(peak_threshold));
  add("analysis.occupation_threshold", num(occupation_threshold));
  add("analysis.envelope_periods", num(envelope_periods));
  add("oracle.enabled", oracle ? "true" : "false");
  add("oracle.tolerance", num(oracle_tolerance));
  add("oracle.kx_points", std::to_string(oracle_kx_points));
  add("oracle.t_max", num(oracle_t_max));
  return s;
}

std::string RunConfig::hash() const { return fmt::format("{:016x}", fnv1a(canonical())); }

ResolvedRun resolve(const RunConfig& c) {
  validate(c);
  ResolvedRun r;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  switch (c.source) {
    case FieldSource::Tesla: r.params = make_params(c.field_value, c.mode); break;
    case FieldSource::B: r.params = make_params_dimensionless(c.field_value, c.mode); break;
    case FieldSource::Kappa: r.params = make_params_from_kappa(c.field_value, c.mode); break;
    case FieldSource::Trap: {
      const double mass = ion_mass(c.trap.species);
      std::optional<double> nu;
      if (c.trap.trap_freq_hz) nu = two_pi * *c.trap.trap_freq_hz;
      TrapConfig trap;
      try {
        if (c.trap.omega_hz) {
          trap = TrapConfig::make(c.trap.eta, two_pi * *c.trap.omega_hz, two_pi * c.trap.omega_tilde_hz, mass,
                                  c.trap.delta_m, nu);
        } else {
          TrapConstraints fixed;
          fixed.eta = c.trap.eta;
          fixed.omega_tilde = two_pi * c.trap.omega_tilde_hz;
          fixed.ion_mass = mass;
          if (c.trap.delta_m) fixed.delta = c.trap.delta_m;
          else fixed.trap_freq = nu;
          trap = dirac_to_trap(make_params_from_kappa(*c.trap.kappa, c.mode), fixed);
        }
      } catch (const DomainError& e) {
        throw ConfigError(std::string("trap: ") + e.what());
      }
      r.trap = trap;
      r.params = trap_to_dirac(trap, c.mode).params;
      break;
    }
  }
  const double L = r.params.magnetic_length;
  double unit = 1.0;
  if (c.packet_units == LengthUnit::L) unit = L;
  if (c.packet_units == LengthUnit::Delta) unit = L / std::sqrt(2.0);
  r.packet.dx = c.dx * unit;
  r.packet.dy = c.dy * unit;
  r.packet.dz = c.dz * unit;
  r.packet.k0x = c.k0x / unit;
  r.packet.component = c.component;

  double t_end = c.t_end;
  if (c.time_units == TimeUnit::Periods) {
    t_end *= 2.0 * std::numbers::pi / cyclotron_reference(r.packet, r.params).omega_c;
  }
  r.grid = TimeGrid::span(t_end, c.samples);
  r.length_unit = c.position_units == LengthUnit::L ? L : 1.0;
  r.length_label = c.position_units == LengthUnit::L ? "L" : "lambda_c";
  return r;
}

}  // namespace zb
