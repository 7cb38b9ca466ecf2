#include "zbsim/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "zbsim/errors.hpp"

namespace zb {

namespace {

constexpr int kMaxKzLevel = 24;

// Exponent pieces of the y overlap integral in xi = y/L - kx L:
//   f_y(L(xi + xi0)) psi_n(xi) ~ exp(-beta (xi - mu)^2) * polynomial.
struct XiGaussian {
  double alpha;
  double beta;
  double mu;
};

XiGaussian xi_gaussian(const GaussianPacket& packet, double kx, double length) {
  const double xi0 = kx * length;
  const double alpha = length * length / (2.0 * packet.dy * packet.dy);
  const double beta = 0.5 + alpha;
  return {alpha, beta, -alpha * xi0 / beta};
}

// h_n(kx) = int f_y(y) L^{-1/2} psi_n(y/L - kx L) dy for n = 0..n_max.
void y_overlaps(const GaussianPacket& packet, double kx, double length, int n_max,
                const HermiteRule& gh, std::span<double> out) {
  const auto g = xi_gaussian(packet, kx, length);
  const double xi0 = kx * length;
  const double inv_sqrt_beta = 1.0 / std::sqrt(g.beta);
  const double prefactor =
      std::sqrt(length) * std::pow(std::numbers::pi * packet.dy * packet.dy, -0.25) * inv_sqrt_beta;
  std::fill(out.begin(), out.begin() + n_max + 1, 0.0);
  std::vector<double> psi(static_cast<std::size_t>(n_max) + 1);
  for (std::size_t i = 0; i < gh.size(); ++i) {
    const double xi = g.mu + gh.nodes[i] * inv_sqrt_beta;
    const double shifted = xi + xi0;
    const double profile = std::exp(-g.alpha * shifted * shifted);
    oscillator_functions(xi, n_max, psi);
    const double w = gh.scaled_weights[i] * prefactor * profile;
    for (int n = 0; n <= n_max; ++n) out[n] += w * psi[n];
  }
}

int default_xi_nodes(int n_max) { return n_max / 2 + 16; }
int default_kx_nodes(int n_max) { return n_max + 16; }

}  // namespace

void GaussianPacket::validate(Dimensionality dim) const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(dx) || !positive(dy)) throw DomainError("packet widths dx, dy must be positive");
  if (dim == Dimensionality::ThreePlusOne && !positive(dz)) {
    throw DomainError("packet width dz must be positive in 3+1 mode");
  }
  if (!std::isfinite(k0x)) throw DomainError("packet kick k0x must be finite");
  if (component < 1 || component > 4) {
    throw DomainError("spinor component must be in 1..4, got " + std::to_string(component));
  }
}

double g_z(const GaussianPacket& packet, double kz) {
  const double d = packet.dz;
  return std::pow(d * d / std::numbers::pi, 0.25) * std::exp(-0.5 * d * d * kz * kz);
}

double g_x(const GaussianPacket& packet, double kx) {
  const double d = packet.dx;
  const double q = kx - packet.k0x;
  return std::pow(d * d / std::numbers::pi, 0.25) * std::exp(-0.5 * d * d * q * q);
}

// ---------------------------------------------------------------------------
// kz quadrature

KzQuadrature::KzQuadrature(const GaussianPacket& packet, const SimParams& params,
                           const KzOptions& options)
    : options_(options), dz_(packet.dz), cache_(std::make_shared<Cache>()) {
  if (!(options.cutoff > 0.0) || options.base_panels < 1 || options.points_per_panel < 2 ||
      !(options.max_panel_phase > 0.0) || !(options.oversample > 0.0)) {
    throw DomainError("invalid kz quadrature options");
  }
  half_range_ = options.cutoff / packet.dz;
  // |dE/dkz| = c^2 kz / E <= c (c K) / sqrt((mc^2)^2 + (c K)^2), twice for E_{n+1} + E_n
  const double pk = params.speed * half_range_;
  phase_slope_ = 2.0 * params.speed * pk / std::hypot(params.mass_energy, pk) / params.mass_energy;
  base_panels_ = std::max(1, static_cast<int>(std::ceil(options.base_panels * options.oversample)));
  panel_rule_ = gauss_legendre(options.points_per_panel);
}

int KzQuadrature::panel_count(int g) const { return base_panels_ << g; }

int KzQuadrature::level_for(double t) const {
  const double needed = phase_slope_ * std::abs(t) * 2.0 * half_range_ / options_.max_panel_phase;
  int g = 0;
  while (panel_count(g) < needed) {
    if (++g > kMaxKzLevel) throw ConvergenceError("kz quadrature refinement exceeded for t = " + std::to_string(t));
  }
  return g;
}

QuadratureRule KzQuadrature::build_level(int g) const {
  const int panels = panel_count(g);
  const double width = 2.0 * half_range_ / panels;
  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * panel_rule_.size());
  rule.weights.reserve(rule.nodes.capacity());
  const double norm = dz_ / std::sqrt(std::numbers::pi);
  for (int p = 0; p < panels; ++p) {
    const double mid = -half_range_ + (p + 0.5) * width;
    for (std::size_t i = 0; i < panel_rule_.size(); ++i) {
      const double kz = mid + 0.5 * width * panel_rule_.nodes[i];
      rule.nodes.push_back(kz);
      rule.weights.push_back(0.5 * width * panel_rule_.weights[i] * norm * std::exp(-dz_ * dz_ * kz * kz));
    }
  }
  return rule;
}

const QuadratureRule& KzQuadrature::level(int g) const {
  if (!cache_) throw DomainError("kz quadrature is not configured (2+1 mode)");
  if (g < 0 || g > kMaxKzLevel) throw DomainError("kz quadrature level out of range");
  std::lock_guard lock(cache_->mutex);
  while (static_cast<int>(cache_->levels.size()) <= g) {
    cache_->levels.push_back(build_level(static_cast<int>(cache_->levels.size())));
  }
  return cache_->levels[g];
}

// ---------------------------------------------------------------------------
// decomposition

std::complex<double> f_coeff(const GaussianPacket& packet, int n, double kx, const SimParams& params,
                             int xi_nodes) {
  if (n < 0) throw DomainError("Landau index must be non-negative");
  const int nodes = xi_nodes > 0 ? xi_nodes : default_xi_nodes(n);
  const auto gh = gauss_hermite(nodes);
  std::vector<double> h(static_cast<std::size_t>(n) + 1);
  y_overlaps(packet, kx, params.magnetic_length, n, gh, h);
  const double value = g_x(packet, kx) * h[n];
  if (!std::isfinite(value)) throw ConvergenceError("F_n quadrature produced a non-finite value");
  return {value, 0.0};
}

namespace {

struct Table {
  QuadratureRule kx_rule;
  std::vector<double> f;  // [n][kx]
  std::vector<double> diag;
};

Table tabulate(const GaussianPacket& packet, const SimParams& params, int n_max, int kx_nodes,
               int xi_nodes) {
  const double length = params.magnetic_length;
  const double l2 = length * length;
  // |g_x|^2 h_m h_n is exp(-a (kx - c)^2) times a polynomial in kx
  const double precision =
      packet.dx * packet.dx + l2 * l2 / (packet.dy * packet.dy + l2);
  const double center = packet.dx * packet.dx * packet.k0x / precision;
  Table t;
  t.kx_rule = scaled_hermite(kx_nodes, center, precision);
  const auto gh = gauss_hermite(xi_nodes);
  const std::size_t nk = t.kx_rule.size();
  t.f.assign(static_cast<std::size_t>(n_max + 1) * nk, 0.0);
  std::vector<double> h(static_cast<std::size_t>(n_max) + 1);
  for (std::size_t i = 0; i < nk; ++i) {
    const double kx = t.kx_rule.nodes[i];
    y_overlaps(packet, kx, length, n_max, gh, h);
    const double gx = g_x(packet, kx);
    for (int n = 0; n <= n_max; ++n) t.f[static_cast<std::size_t>(n) * nk + i] = gx * h[n];
  }
  t.diag.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 0; n <= n_max; ++n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < nk; ++i) {
      const double v = t.f[static_cast<std::size_t>(n) * nk + i];
      acc += t.kx_rule.weights[i] * v * v;
    }
    t.diag[n] = acc;
  }
  return t;
}

double tail_after(const std::vector<double>& diag, int n) {
  double s = 0.0;
  for (int m = 0; m <= n; ++m) s += diag[m];
  return 1.0 - s;
}

}  // namespace

PacketDecomposition PacketDecomposition::build(const GaussianPacket& packet, const SimParams& params,
                                               const DecompositionOptions& options) {
  packet.validate(params.dimensionality);
  if (!(options.tail_threshold > 0.0)) throw DomainError("tail threshold must be positive");
  if (options.n_max_cap < 1) throw DomainError("n_max cap must be positive");

  int n_max = options.n_max;
  if (n_max <= 0) {
    int trial = std::min(32, options.n_max_cap);
    while (true) {
      const auto probe = tabulate(packet, params, trial, default_kx_nodes(trial), default_xi_nodes(trial));
      int found = -1;
      for (int n = 0; n <= trial; ++n) {
        if (tail_after(probe.diag, n) < options.tail_threshold) {
          found = n;
          break;
        }
      }
      if (found >= 0) {
        n_max = std::max(found, 1);
        break;
      }
      if (trial >= options.n_max_cap) {
        throw ConvergenceError("packet tail mass " + std::to_string(tail_after(probe.diag, trial)) +
                               " above threshold at the Landau cut-off cap " + std::to_string(trial));
      }
      trial = std::min(2 * trial, options.n_max_cap);
    }
  }

  const int kx_nodes = options.kx_nodes > 0 ? options.kx_nodes : default_kx_nodes(n_max);
  const int xi_nodes = options.xi_nodes > 0 ? options.xi_nodes : default_xi_nodes(n_max);
  auto table = tabulate(packet, params, n_max, kx_nodes, xi_nodes);

  PacketDecomposition d;
  d.packet_ = packet;
  d.params_ = params;
  d.n_max_ = n_max;
  d.kx_rule_ = std::move(table.kx_rule);
  d.f_table_ = std::move(table.f);
  d.diag_ = std::move(table.diag);
  d.tail_mass_ = tail_after(d.diag_, n_max);
  d.super_.assign(static_cast<std::size_t>(n_max), 0.0);
  for (int n = 0; n < n_max; ++n) d.super_[n] = d.u(n, n + 1).real();
  if (params.dimensionality == Dimensionality::ThreePlusOne) {
    d.kz_ = KzQuadrature(packet, params, options.kz);
  }
  return d;
}

double PacketDecomposition::diagonal_sum() const {
  double s = 0.0;
  for (double v : diag_) s += v;
  return s;
}

double PacketDecomposition::f(int n, std::size_t kx_index) const {
  if (n < 0 || n > n_max_) throw TruncationError("F_n requested beyond the Landau cut-off");
  return f_table_.at(static_cast<std::size_t>(n) * kx_rule_.size() + kx_index);
}

std::complex<double> PacketDecomposition::u(int m, int n) const {
  if (m < 0 || n < 0) throw DomainError("Landau index must be non-negative");
  if (m > n_max_ || n > n_max_) {
    throw TruncationError("U(" + std::to_string(m) + "," + std::to_string(n) +
                          ") beyond the Landau cut-off " + std::to_string(n_max_));
  }
  const std::size_t nk = kx_rule_.size();
  const double* fm = f_table_.data() + static_cast<std::size_t>(m) * nk;
  const double* fn = f_table_.data() + static_cast<std::size_t>(n) * nk;
  double acc = 0.0;
  for (std::size_t i = 0; i < nk; ++i) acc += kx_rule_.weights[i] * fm[i] * fn[i];
  return {acc, 0.0};
}

double PacketDecomposition::u_diagonal(int n) const {
  if (n < 0 || n > n_max_) throw TruncationError("U diagonal beyond the Landau cut-off");
  return diag_[n];
}

double PacketDecomposition::u_super(int n) const {
  if (n < 0 || n >= n_max_) throw TruncationError("U band beyond the Landau cut-off");
  return super_[n];
}

double PacketDecomposition::gz_squared(double kz) const {
  if (!three_dimensional()) return 0.0;
  const double g = g_z(packet_, kz);
  return g * g;
}

std::complex<double> u_overlap(const PacketDecomposition& decomp, int m, int n) {
  return decomp.u(m, n);
}

}  // namespace zb
