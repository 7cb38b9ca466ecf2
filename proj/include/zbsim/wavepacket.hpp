#pragma once

// Ellipsoidal Gaussian spinor packet and its decomposition onto the Landau
// basis.
//
// The packet occupies one spinor component j:
//   f(r) = (pi^3 dx^2 dy^2 dz^2)^{-1/4}
//          exp(-x^2/2dx^2 - y^2/2dy^2 - z^2/2dz^2 + i k0x x).
// Projected on exp(i kx x + i kz z) it factorizes into g_x(kx) g_z(kz) and a
// y profile, whose overlap with the oscillator function centred at
// y = kx L^2 gives F_n(kx). The overlap matrix U_{m,n} = int F_m^* F_n dkx
// carries all the packet information the trajectory sums need.

#include <complex>
#include <deque>
#include <memory>
#include <mutex>
#include <vector>

#include "zbsim/quadrature.hpp"
#include "zbsim/units.hpp"

namespace zb {

struct GaussianPacket {
  double dx = 1.0;   // lambda_c
  double dy = 1.0;   // lambda_c
  double dz = 1.0;   // lambda_c, used in 3+1 only
  double k0x = 0.0;  // 1/lambda_c
  int component = 2; // spinor index 1..4

  // Throws DomainError on non-positive widths or a component outside 1..4.
  void validate(Dimensionality dim) const;
};

// Fourier amplitude of the z profile, (1/sqrt(2pi)) int f_z(z) e^{-i kz z} dz.
double g_z(const GaussianPacket& packet, double kz);

// Fourier amplitude of the x profile; peaks at kx = k0x.
double g_x(const GaussianPacket& packet, double kx);

// Composite Gauss-Legendre rule over kz for the 3+1 integrals. Panels are
// refined in powers of two so that the phase of exp(i (E_{n+1} + E_n) t)
// changes by at most `max_panel_phase` over a panel; level(t) picks the
// coarsest adequate refinement. Weights include |g_z(kz)|^2.
struct KzOptions {
  double cutoff = 5.5;           // range |kz| <= cutoff / dz
  int base_panels = 8;
  int points_per_panel = 24;
  double max_panel_phase = 24.0; // radians
  double oversample = 1.0;       // multiplies the panel count (convergence checks)
};

class KzQuadrature {
 public:
  KzQuadrature() = default;
  KzQuadrature(const GaussianPacket& packet, const SimParams& params, const KzOptions& options);

  int level_for(double t) const;
  const QuadratureRule& level(int g) const;
  int panel_count(int g) const;
  double half_range() const { return half_range_; }

 private:
  QuadratureRule build_level(int g) const;

  struct Cache {
    std::mutex mutex;
    std::deque<QuadratureRule> levels;
  };

  KzOptions options_;
  double dz_ = 1.0;
  double half_range_ = 0.0;
  double phase_slope_ = 0.0;  // bound on |d(E_{n+1}+E_n)/dkz|
  int base_panels_ = 0;
  QuadratureRule panel_rule_;
  std::shared_ptr<Cache> cache_;
};

struct DecompositionOptions {
  double tail_threshold = 1e-10;
  int n_max_cap = 400;
  int n_max = -1;     // > 0 forces the Landau cut-off
  int kx_nodes = 0;   // 0: n_max + 16 (exact for U up to n_max)
  int xi_nodes = 0;   // 0: n_max/2 + 16 (exact for F up to n_max)
  KzOptions kz;
};

class PacketDecomposition {
 public:
  // Throws ConvergenceError when no cut-off up to n_max_cap brings the tail
  // mass under the threshold.
  static PacketDecomposition build(const GaussianPacket& packet, const SimParams& params,
                                   const DecompositionOptions& options = {});

  const GaussianPacket& packet() const { return packet_; }
  const SimParams& params() const { return params_; }
  int n_max() const { return n_max_; }
  double tail_mass() const { return tail_mass_; }
  double diagonal_sum() const;

  const std::vector<double>& kx_nodes() const { return kx_rule_.nodes; }
  const std::vector<double>& kx_weights() const { return kx_rule_.weights; }

  // F_n at kx node i (real for packets without a y kick).
  double f(int n, std::size_t kx_index) const;

  // U_{m,n}; throws TruncationError past n_max.
  std::complex<double> u(int m, int n) const;

  // Cached band entries.
  double u_diagonal(int n) const;
  double u_super(int n) const;  // U_{n,n+1}

  bool three_dimensional() const { return params_.dimensionality == Dimensionality::ThreePlusOne; }
  const KzQuadrature& kz() const { return kz_; }

  // |g_z(kz)|^2, or 0 in 2+1 where the profile is delta(kz).
  double gz_squared(double kz) const;

 private:
  GaussianPacket packet_;
  SimParams params_;
  int n_max_ = 0;
  double tail_mass_ = 1.0;
  QuadratureRule kx_rule_;
  std::vector<double> f_table_;  // row-major [n][kx]
  std::vector<double> diag_;
  std::vector<double> super_;
  KzQuadrature kz_;
};

// F_n(kx) evaluated directly by Gauss-Hermite quadrature in xi.
std::complex<double> f_coeff(const GaussianPacket& packet, int n, double kx, const SimParams& params,
                             int xi_nodes = 0);

std::complex<double> u_overlap(const PacketDecomposition& decomp, int m, int n);

}  // namespace zb
