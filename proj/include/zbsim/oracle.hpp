#pragma once

// Brute-force check of the analytic engine: the Dirac Hamiltonian is built
// from explicit 4x4 Dirac matrices and truncated oscillator ladder matrices,
// diagonalized densely, and the packet is evolved in the Schroedinger
// picture.
//
// Basis ordering: index = component * (n_trunc + 1) + n, with spinor
// component 0..3 and oscillator level n = 0..n_trunc.

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "zbsim/dynamics.hpp"
#include "zbsim/units.hpp"
#include "zbsim/wavepacket.hpp"

namespace zb {

using Matrix4c = Eigen::Matrix<std::complex<double>, 4, 4>;

struct DiracMatrices {
  Matrix4c alpha_x;
  Matrix4c alpha_y;
  Matrix4c alpha_z;
  Matrix4c beta;
};

// Standard (Dirac) representation.
DiracMatrices standard_dirac_matrices();

// Truncated lowering operator, <n-1|a|n> = sqrt(n), size (n_trunc+1)^2.
Eigen::MatrixXcd lowering_operator(int n_trunc);

struct TruncatedHamiltonian {
  int n_trunc = 0;
  double kx = 0.0;
  double kz = 0.0;
  Eigen::MatrixXcd matrix;

  int dimension() const { return static_cast<int>(matrix.rows()); }
  static int index(int component, int n, int n_trunc) { return component * (n_trunc + 1) + n; }
};

// H = sum_i alpha_i pi_i + beta mc^2 with pi_x - i pi_y = -hbar omega a,
// pi_z = hbar kz. In the Landau gauge the matrix does not depend on kx; kx
// only shifts the oscillator centre and is kept for bookkeeping.
TruncatedHamiltonian build_matrix(double kx, double kz, int n_trunc, const SimParams& params);

class EigenSystem {
 public:
  explicit EigenSystem(const TruncatedHamiltonian& h);

  const Eigen::VectorXd& energies() const { return energies_; }
  const Eigen::MatrixXcd& vectors() const { return vectors_; }
  int dimension() const { return static_cast<int>(energies_.size()); }

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
};

// exp(-i H t) applied to normalized coefficients; throws DomainError if
// | ||c|| - 1 | > 1e-10.
Eigen::VectorXcd evolve(const EigenSystem& system, const Eigen::VectorXcd& coeffs, double t);
Eigen::VectorXcd evolve(const TruncatedHamiltonian& h, const Eigen::VectorXcd& coeffs, double t);

struct OracleOptions {
  int n_trunc = 0;             // 0: chosen from the packet tail
  int n_trunc_margin = 8;
  double tail_threshold = 1e-10;
  int kx_points = 401;         // uniform trapezoid grid over kx
  double kx_half_width = 12.0; // in units of the kx Gaussian width
  double xi_step = 0.02;       // trapezoid step of the y projection
  double t_max_3d = -1.0;      // 3+1: kz grid sized for this time (default: grid end)
  KzOptions kz;
};

// Spinor-oscillator amplitudes of the packet at one kx, projected by direct
// trapezoid quadrature over y (independent of the Gauss-Hermite path of the
// decomposition).
Eigen::VectorXcd packet_coefficients(const GaussianPacket& packet, const SimParams& params, double kx,
                                     int n_trunc, double xi_step = 0.02);

struct OracleResult {
  Trajectory trajectory;
  int n_trunc = 0;
  double tail_mass = 0.0;
  std::vector<double> eigenvalues;  // kz = 0 (2+1) or the central kz node (3+1)
};

OracleResult oracle_run(const GaussianPacket& packet, const SimParams& params, const TimeGrid& grid,
                        const OracleOptions& options = {});

Trajectory oracle_trajectory(const GaussianPacket& packet, const SimParams& params, const TimeGrid& grid,
                             const OracleOptions& options = {});

struct SpectrumComparison {
  double max_relative_deviation = 0.0;
  int levels_checked = 0;
  int multiplicity_mismatches = 0;
  bool passed = false;
};

// Compares eigenvalues of the truncated matrix against the closed-form
// Landau energies for the levels n <= interior_fraction * n_trunc.
SpectrumComparison compare_spectrum(int n_trunc, double kz, const SimParams& params,
                                    double interior_fraction = 0.9, double tolerance = 1e-10);

struct TransformReport {
  double delta_square_deviation = 0.0;  // max |delta^2 - 1|
  double unitarity_deviation = 0.0;     // max |P P^dag - 1|
  double block_form_deviation = 0.0;    // max |P H P^dag - H'(printed block form)|
  double spectrum_deviation = 0.0;      // max relative |eig(H) - eig(H')|
  bool passed = false;
  std::string summary() const;
};

// delta = alpha_x alpha_y alpha_z beta, P = delta (delta + beta)/sqrt 2.
Matrix4c moss_operator();
Matrix4c delta_matrix();

// H' = [[0, h'], [h'^dag, 0]] with h' = [[c pz - i mc^2, -hbar omega a],
// [-hbar omega a^dag, -c pz - i mc^2]] (px absorbed into the ladder
// operators of the Landau gauge).
Eigen::MatrixXcd transformed_block_hamiltonian(double kz, int n_trunc, const SimParams& params);

TransformReport check_transform(const SimParams& params, int n_trunc = 20, double kz = 0.0);

}  // namespace zb
