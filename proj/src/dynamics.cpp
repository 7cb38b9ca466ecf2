#include "zbsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <fmt/format.h>

#include "zbsim/errors.hpp"
#include "zbsim/landau.hpp"

namespace zb {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// kz-dependent pieces of the integrands of level n.
struct LevelPair {
  double e_low;      // E_n
  double e_high;     // E_{n+1}
  double intra;      // E_{n+1} - E_n
  double inter;      // E_{n+1} + E_n
  double c_plus;     // 1 + E_n/E_{n+1}
  double c_minus;    // 1 - E_n/E_{n+1}
  double s_plus;     // mc^2 (1/E_n + 1/E_{n+1})
  double s_minus;    // mc^2 (1/E_n - 1/E_{n+1})
};

LevelPair level_pair(int n, double kz, const SimParams& params) {
  const double mc2 = params.mass_energy;
  LevelPair p;
  p.e_low = energy(n, kz, params);
  p.e_high = energy(n + 1, kz, params);
  // E_{n+1}^2 - E_n^2 = (hbar omega)^2, free of cancellation
  const double hw = params.field_ratio_b * mc2;
  const double diff = hw * hw / (p.e_high + p.e_low);
  p.intra = diff / mc2;
  p.inter = (p.e_high + p.e_low) / mc2;
  p.c_plus = 1.0 + p.e_low / p.e_high;
  p.c_minus = diff / p.e_high;
  p.s_plus = mc2 * (1.0 / p.e_low + 1.0 / p.e_high);
  p.s_minus = mc2 * diff / (p.e_low * p.e_high);
  return p;
}

void require_component_two(const PacketDecomposition& decomp) {
  if (decomp.packet().component != 2) {
    throw DomainError("analytic trajectory sums are derived for a packet in spinor component 2");
  }
}

template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// I(n, t_i) for all samples of a 3+1 grid. Within each anchored segment the
// phases exp(i omega t) advance by a fixed rotation per step.
void integrate_level_3d(int n, const PacketDecomposition& decomp, const SimParams& params,
                        const TimeGrid& grid, std::size_t anchor_every, std::span<TimeIntegrals> out) {
  const auto& kz = decomp.kz();
  std::size_t i = 0;
  std::vector<double> cp, cm, sp, sm, wa, wb;
  std::vector<double> ar, ai, br, bi, rar, rai, rbr, rbi;
  while (i < grid.count) {
    const int g = kz.level_for(grid.at(i));
    std::size_t run_end = i + 1;
    while (run_end < grid.count && kz.level_for(grid.at(run_end)) == g) ++run_end;

    const auto& rule = kz.level(g);
    const std::size_t m = rule.size();
    cp.resize(m); cm.resize(m); sp.resize(m); sm.resize(m); wa.resize(m); wb.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto p = level_pair(n, rule.nodes[j], params);
      const double w = rule.weights[j];
      cp[j] = w * p.c_plus;
      cm[j] = w * p.c_minus;
      sp[j] = w * p.s_plus;
      sm[j] = w * p.s_minus;
      wa[j] = p.intra;
      wb[j] = p.inter;
    }
    ar.resize(m); ai.resize(m); br.resize(m); bi.resize(m);
    rar.resize(m); rai.resize(m); rbr.resize(m); rbi.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      rar[j] = std::cos(wa[j] * grid.dt);
      rai[j] = std::sin(wa[j] * grid.dt);
      rbr[j] = std::cos(wb[j] * grid.dt);
      rbi[j] = std::sin(wb[j] * grid.dt);
    }

    while (i < run_end) {
      // anchor: exact phases at t_i
      const double ta = grid.at(i);
      for (std::size_t j = 0; j < m; ++j) {
        ar[j] = std::cos(wa[j] * ta);
        ai[j] = std::sin(wa[j] * ta);
        br[j] = std::cos(wb[j] * ta);
        bi[j] = std::sin(wb[j] * ta);
      }
      std::size_t seg_end = std::min(run_end, (i / anchor_every + 1) * anchor_every);
      for (; i < seg_end; ++i) {
        double icp = 0.0, icm = 0.0, isp = 0.0, ism = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          icp += cp[j] * ar[j];
          isp += sp[j] * ai[j];
          icm += cm[j] * br[j];
          ism += sm[j] * bi[j];
        }
        out[i] = {icp, icm, isp, ism};
        for (std::size_t j = 0; j < m; ++j) {
          const double xr = ar[j] * rar[j] - ai[j] * rai[j];
          const double xi = ar[j] * rai[j] + ai[j] * rar[j];
          ar[j] = xr;
          ai[j] = xi;
          const double yr = br[j] * rbr[j] - bi[j] * rbi[j];
          const double yi = br[j] * rbi[j] + bi[j] * rbr[j];
          br[j] = yr;
          bi[j] = yi;
        }
      }
    }
  }
}

void accumulate(int n, double u_band, const TimeIntegrals& in, LadderExpectation& e) {
  const double coef = 0.5 * std::sqrt(n + 1.0) * u_band;
  e.a_intraband += coef * (in.ic_plus - kI * in.is_plus);
  e.a_interband += coef * (in.ic_minus + kI * in.is_minus);
  // U_{n+1,n} = conj(U_{n,n+1}); real for this packet family
  e.adag_intraband += coef * (in.ic_plus + kI * in.is_plus);
  e.adag_interband += coef * (in.ic_minus - kI * in.is_minus);
}

void finish(LadderExpectation& e) {
  e.a = e.a_intraband + e.a_interband;
  e.adag = e.adag_intraband + e.adag_interband;
}

}  // namespace

TimeGrid TimeGrid::span(double t_end, std::size_t samples) {
  if (samples == 0) throw DomainError("time grid needs at least one sample");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("time grid end must be non-negative");
  if (samples == 1) return {0.0, t_end > 0.0 ? t_end : 1.0, 1};
  if (t_end == 0.0) throw DomainError("zero-length time grid with several samples");
  return {0.0, t_end / static_cast<double>(samples - 1), samples};
}

TimeIntegrals time_integrals(int n, double t, const PacketDecomposition& decomp, const SimParams& params) {
  if (n < 0) throw DomainError("Landau index must be non-negative");
  if (!decomp.three_dimensional()) {
    const auto p = level_pair(n, 0.0, params);
    return {p.c_plus * std::cos(p.intra * t), p.c_minus * std::cos(p.inter * t),
            p.s_plus * std::sin(p.intra * t), p.s_minus * std::sin(p.inter * t)};
  }
  const auto& rule = decomp.kz().level(decomp.kz().level_for(t));
  TimeIntegrals out;
  for (std::size_t j = 0; j < rule.size(); ++j) {
    const auto p = level_pair(n, rule.nodes[j], params);
    const double w = rule.weights[j];
    out.ic_plus += w * p.c_plus * std::cos(p.intra * t);
    out.ic_minus += w * p.c_minus * std::cos(p.inter * t);
    out.is_plus += w * p.s_plus * std::sin(p.intra * t);
    out.is_minus += w * p.s_minus * std::sin(p.inter * t);
  }
  return out;
}

LadderExpectation ladder_expectations(double t, const PacketDecomposition& decomp, const SimParams& params) {
  require_component_two(decomp);
  LadderExpectation e{};
  for (int n = 0; n < decomp.n_max(); ++n) {
    const double u = decomp.u_super(n);
    if (u == 0.0) continue;
    accumulate(n, u, time_integrals(n, t, decomp, params), e);
  }
  finish(e);
  return e;
}

Position position_from(const LadderExpectation& e, double magnetic_length) {
  const double s = magnetic_length / std::sqrt(2.0);
  auto y_of = [&](std::complex<double> a, std::complex<double> ad) { return s * (a + ad); };
  auto x_of = [&](std::complex<double> a, std::complex<double> ad) { return s * (a - ad) / kI; };
  const auto y = y_of(e.a, e.adag);
  const auto x = x_of(e.a, e.adag);
  Position p;
  p.x = x.real();
  p.y = y.real();
  p.x_intraband = x_of(e.a_intraband, e.adag_intraband).real();
  p.y_intraband = y_of(e.a_intraband, e.adag_intraband).real();
  p.x_interband = x_of(e.a_interband, e.adag_interband).real();
  p.y_interband = y_of(e.a_interband, e.adag_interband).real();
  p.imag_residue = std::max(std::abs(x.imag()), std::abs(y.imag()));
  return p;
}

Position position(double t, const PacketDecomposition& decomp, const SimParams& params) {
  return position_from(ladder_expectations(t, decomp, params), params.magnetic_length);
}

Trajectory trajectory(const PacketDecomposition& decomp, const SimParams& params, const TimeGrid& grid,
                      const TrajectoryOptions& options) {
  require_component_two(decomp);
  if (grid.count == 0) throw DomainError("empty time grid");
  if (options.anchor_every == 0) throw DomainError("anchor spacing must be positive");
  const int levels = decomp.n_max();

  // integrals[n][i]
  std::vector<std::vector<TimeIntegrals>> integrals(static_cast<std::size_t>(levels));
  std::vector<int> active;
  for (int n = 0; n < levels; ++n) {
    if (decomp.u_super(n) != 0.0) active.push_back(n);
  }
  if (decomp.three_dimensional()) {
    // build every kz level up front so workers only read the cache
    decomp.kz().level(decomp.kz().level_for(grid.end()));
  }
  parallel_for(active.size(), options.threads, [&](std::size_t k) {
    const int n = active[k];
    auto& row = integrals[n];
    row.resize(grid.count);
    if (decomp.three_dimensional()) {
      integrate_level_3d(n, decomp, params, grid, options.anchor_every, row);
    } else {
      const auto p = level_pair(n, 0.0, params);
      for (std::size_t i = 0; i < grid.count; ++i) {
        const double t = grid.at(i);
        row[i] = {p.c_plus * std::cos(p.intra * t), p.c_minus * std::cos(p.inter * t),
                  p.s_plus * std::sin(p.intra * t), p.s_minus * std::sin(p.inter * t)};
      }
    }
  });

  Trajectory traj;
  traj.mode = params.dimensionality;
  traj.provenance = describe(decomp.packet(), params, decomp.n_max());
  const std::size_t count = grid.count;
  for (auto* v : {&traj.times, &traj.x, &traj.y, &traj.x_interband, &traj.y_interband, &traj.x_intraband,
                  &traj.y_intraband}) {
    v->resize(count);
  }
  for (std::size_t i = 0; i < count; ++i) {
    LadderExpectation e{};
    for (int n : active) accumulate(n, decomp.u_super(n), integrals[n][i], e);
    finish(e);
    const auto p = position_from(e, params.magnetic_length);
    traj.times[i] = grid.at(i);
    traj.x[i] = p.x;
    traj.y[i] = p.y;
    traj.x_interband[i] = p.x_interband;
    traj.y_interband[i] = p.y_interband;
    traj.x_intraband[i] = p.x_intraband;
    traj.y_intraband[i] = p.y_intraband;
    traj.imag_residue = std::max(traj.imag_residue, p.imag_residue);
  }
  return traj;
}

CyclotronReference cyclotron_reference(const GaussianPacket& packet, const SimParams& params) {
  const double e0 = energy(0, 0.0, params);
  const double e1 = energy(1, 0.0, params);
  const double hw = params.field_ratio_b * params.mass_energy;
  return {hw * hw / (e1 + e0) / params.mass_energy,
          packet.k0x * params.magnetic_length * params.magnetic_length};
}

std::string describe(const GaussianPacket& packet, const SimParams& params, int n_max) {
  return fmt::format("mode={} b={:.17g} kappa={:.17g} L={:.17g} dx={:.17g} dy={:.17g} dz={:.17g} "
                     "k0x={:.17g} component={} n_max={}",
                     to_string(params.dimensionality), params.field_ratio_b, params.kappa,
                     params.magnetic_length, packet.dx, packet.dy, packet.dz, packet.k0x,
                     packet.component, n_max);
}

}  // namespace zb
