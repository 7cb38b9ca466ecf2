#include <map>
#include <stdexcept>

#include "zbsim/config.hpp"
#include "zbsim/errors.hpp"

namespace zb {

namespace {

// kept in sync with scenarios/*.ini (checked by the tests)
const std::map<std::string, std::string>& presets() {
  static const std::map<std::string, std::string> p = {
      {"fig1", R"INI(# Electron in vacuum, B = 2e9 T, 3+1 Dirac equation.
# Positions in lambda_c, time in t_c.

[scenario]
name = fig1
mode = 3+1

[field]
tesla = 2e9

[packet]
units = lambda_c
# widths and kick are free choices
dx = 1.35
dy = 1.5
dz = 2.0
k0x = 1.0
component = 2

[time]
# 100 cyclotron periods, about 1650 t_c
units = periods
end = 100
samples = 8192

[numerics]
tail_threshold = 1e-10

[output]
position_units = lambda_c

[analysis]
taper = hann
peak_threshold = 0.01
envelope_periods = 50

[oracle]
# the 3+1 oracle is compared on [0, t_max] only
t_max = 60
)INI"},
      {"fig2a", R"INI(# Trapped-ion simulation of the 2+1 Dirac equation, kappa = 16.65.
# Omega is solved from kappa with eta and Omega~ fixed.
# Positions in L = sqrt(2) Delta.

[scenario]
name = fig2a
mode = 2+1

[trap]
eta = 0.06
omega_tilde_hz = 68000
kappa = 16.65
delta_m = 96e-10
species = Ca40

[packet]
# k0x = 1/Delta, dy = sqrt(2) Delta, dx = 0.9 dy
units = L
dx = 0.9
dy = 1.0
k0x = 1.4142135623730951
component = 2

[time]
# t_end is a free choice
units = t_c
end = 100
samples = 4096

[numerics]
tail_threshold = 1e-10

[output]
position_units = L

[analysis]
taper = hann
peak_threshold = 0.01
envelope_periods = 50

[oracle]
tolerance = 1e-6
)INI"},
      {"fig2b", R"INI(# Trapped-ion simulation of the 2+1 Dirac equation, kappa = 1.05.
# Omega is solved from kappa with eta and Omega~ fixed.
# Positions in L = sqrt(2) Delta.

[scenario]
name = fig2b
mode = 2+1

[trap]
eta = 0.06
omega_tilde_hz = 68000
kappa = 1.05
delta_m = 96e-10
species = Ca40

[packet]
# k0x = 1/Delta, dy = sqrt(2) Delta, dx = 0.9 dy
units = L
dx = 0.9
dy = 1.0
k0x = 1.4142135623730951
component = 2

[time]
# t_end is a free choice
units = t_c
end = 100
samples = 4096

[numerics]
tail_threshold = 1e-10

[output]
position_units = L

[analysis]
taper = hann
peak_threshold = 0.01
envelope_periods = 50

[oracle]
tolerance = 1e-6
)INI"},
      {"fig2c", R"INI(# Trapped-ion simulation of the 2+1 Dirac equation, kappa = 0.116.
# Omega is solved from kappa with eta and Omega~ fixed.
# Positions in L = sqrt(2) Delta.

[scenario]
name = fig2c
mode = 2+1

[trap]
eta = 0.06
omega_tilde_hz = 68000
kappa = 0.116
delta_m = 96e-10
species = Ca40

[packet]
# k0x = 1/Delta, dy = sqrt(2) Delta, dx = 0.9 dy
units = L
dx = 0.9
dy = 1.0
k0x = 1.4142135623730951
component = 2

[time]
# t_end is a free choice
units = t_c
end = 100
samples = 4096

[numerics]
tail_threshold = 1e-10

[output]
position_units = L

[analysis]
taper = hann
peak_threshold = 0.01
envelope_periods = 50

[oracle]
tolerance = 1e-6
)INI"},
  };
  return p;
}

}  // namespace

const std::string& preset_text(const std::string& name) {
  const auto it = presets().find(name);
  if (it == presets().end()) throw ConfigError("unknown scenario '" + name + "' (fig1, fig2a, fig2b, fig2c)");
  return it->second;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : presets()) out.push_back(k);
  return out;
}

}  // namespace zb
