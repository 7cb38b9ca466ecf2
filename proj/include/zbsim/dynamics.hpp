#pragma once

// Analytic expectation values of the ladder operators and of the position
// operators X = L (A - A^dag) / (i sqrt 2), Y = L (A + A^dag) / sqrt 2 for a
// packet in spinor component 2.
//
// Only the s = -1 Johnson-Lippmann states overlap the packet; summing over
// the energy branches gives
//   <A(t)>   = 1/2 sum_n sqrt(n+1) U_{n,n+1} (Ic+ + Ic- - i Is+ + i Is-)
//   <A^dag>  = 1/2 sum_n sqrt(n+1) U_{n+1,n} (Ic+ + Ic- + i Is+ - i Is-)
// with the kz integrals below. The "+" integrals oscillate at
// E_{n+1} - E_n (intraband, cyclotron), the "-" integrals at E_{n+1} + E_n
// (interband, Zitterbewegung).

#include <complex>
#include <string>
#include <vector>

#include "zbsim/units.hpp"
#include "zbsim/wavepacket.hpp"

namespace zb {

struct TimeGrid {
  double t0 = 0.0;
  double dt = 1.0;
  std::size_t count = 1;

  double at(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  double end() const { return at(count - 1); }

  // `samples` points on [0, t_end]. Throws DomainError for samples == 0 or
  // t_end < 0 (t_end == 0 requires samples == 1).
  static TimeGrid span(double t_end, std::size_t samples);
};

struct TimeIntegrals {
  double ic_plus = 0.0;
  double ic_minus = 0.0;
  double is_plus = 0.0;
  double is_minus = 0.0;
};

// The four kz integrals for level n at time t. 2+1 mode uses the kz = 0
// integrand (|g_z|^2 -> delta(kz)).
TimeIntegrals time_integrals(int n, double t, const PacketDecomposition& decomp, const SimParams& params);

struct LadderExpectation {
  std::complex<double> a;
  std::complex<double> adag;
  std::complex<double> a_intraband;
  std::complex<double> adag_intraband;
  std::complex<double> a_interband;
  std::complex<double> adag_interband;
};

// Throws DomainError for packets outside spinor component 2.
LadderExpectation ladder_expectations(double t, const PacketDecomposition& decomp, const SimParams& params);

struct Position {
  double x = 0.0;
  double y = 0.0;
  double x_intraband = 0.0;
  double y_intraband = 0.0;
  double x_interband = 0.0;
  double y_interband = 0.0;
  double imag_residue = 0.0;  // max |Im| of the position combinations
};

Position position_from(const LadderExpectation& e, double magnetic_length);

Position position(double t, const PacketDecomposition& decomp, const SimParams& params);

struct Trajectory {
  std::vector<double> times;  // t_c
  std::vector<double> x;      // lambda_c
  std::vector<double> y;
  std::vector<double> x_interband;
  std::vector<double> y_interband;
  std::vector<double> x_intraband;
  std::vector<double> y_intraband;
  Dimensionality mode = Dimensionality::TwoPlusOne;
  double imag_residue = 0.0;
  std::string provenance;

  std::size_t size() const { return times.size(); }
};

struct TrajectoryOptions {
  int threads = 1;
  // Anchor spacing of the phase recurrences used by the 3+1 batch path.
  std::size_t anchor_every = 256;
};

Trajectory trajectory(const PacketDecomposition& decomp, const SimParams& params, const TimeGrid& grid,
                      const TrajectoryOptions& options = {});

struct CyclotronReference {
  double omega_c;  // (E_1 - E_0)/hbar at kz = 0, 1/t_c
  double radius;   // k0x L^2, lambda_c
};

CyclotronReference cyclotron_reference(const GaussianPacket& packet, const SimParams& params);

std::string describe(const GaussianPacket& packet, const SimParams& params, int n_max);

}  // namespace zb
