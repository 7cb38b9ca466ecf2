#include <doctest.h>

#include <cmath>

#include "zbsim/errors.hpp"
#include "zbsim/landau.hpp"
#include "zbsim/oracle.hpp"

using namespace zb;

namespace {

double max_dev(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("Dirac matrix algebra") {
  const auto d = standard_dirac_matrices();
  const Matrix4c id = Matrix4c::Identity();
  const Matrix4c* all[] = {&d.alpha_x, &d.alpha_y, &d.alpha_z, &d.beta};
  for (int i = 0; i < 4; ++i) {
    CHECK(max_dev((*all[i]) * (*all[i]) - id) < 1e-15);
    CHECK(max_dev(all[i]->adjoint() - *all[i]) < 1e-15);
    for (int j = i + 1; j < 4; ++j) CHECK(max_dev((*all[i]) * (*all[j]) + (*all[j]) * (*all[i])) < 1e-15);
  }
  const Matrix4c delta = delta_matrix();
  CHECK(max_dev(delta * delta - id) < 1e-15);
  for (int i = 0; i < 4; ++i) CHECK(max_dev(delta * (*all[i]) + (*all[i]) * delta) < 1e-15);
}

TEST_CASE("transform operator") {
  const Matrix4c p = moss_operator();
  CHECK(max_dev(p * p.adjoint() - Matrix4c::Identity()) <= 1e-14);
  const auto r = check_transform(make_params_dimensionless(1.0), 20, 0.0);
  CHECK(r.passed);
  CHECK(r.spectrum_deviation <= 1e-10);
  CHECK(r.block_form_deviation <= 1e-12);
  CHECK(check_transform(make_params_dimensionless(0.3), 12, 0.7).passed);
}

TEST_CASE("truncated Hamiltonian") {
  const auto p = make_params_dimensionless(1.3);
  const auto h = build_matrix(0.4, 0.2, 15, p);
  CHECK(h.dimension() == 64);
  CHECK((h.matrix - h.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(TruncatedHamiltonian::index(2, 3, 15) == 35);
  const auto a = lowering_operator(3);
  CHECK(a(0, 1).real() == 1.0);
  CHECK(a(2, 3).real() == doctest::Approx(std::sqrt(3.0)));
  CHECK_THROWS_AS(build_matrix(0.0, 0.0, -1, p), DomainError);
}

TEST_CASE("interior eigenvalues match the closed form") {
  for (double b : {0.1, 1.0, 2.0}) {
    for (double kz : {0.0, 0.5}) {
      const auto p = make_params_dimensionless(b);
      const auto c = compare_spectrum(40, kz, p);
      CHECK(c.multiplicity_mismatches == 0);
      CHECK(c.max_relative_deviation <= 1e-10);
      CHECK(c.passed);
      // every eigenvalue under E_{N/2} is a Landau energy
      const EigenSystem sys(build_matrix(0.0, kz, 40, p));
      const double cut = energy(20, kz, p);
      for (Eigen::Index j = 0; j < sys.energies().size(); ++j) {
        const double e = std::abs(sys.energies()[j]);
        if (e >= cut) continue;
        double best = 1e300;
        for (int n = 0; n <= 20; ++n) best = std::min(best, std::abs(e - energy(n, kz, p)));
        CHECK(best <= 1e-10 * e);
      }
    }
  }
}

TEST_CASE("evolution conserves the norm") {
  const auto p = make_params_dimensionless(0.8);
  const EigenSystem sys(build_matrix(0.0, 0.3, 20, p));
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(sys.dimension());
  c[TruncatedHamiltonian::index(1, 0, 20)] = 0.6;
  c[TruncatedHamiltonian::index(1, 1, 20)] = std::complex<double>(0.0, 0.8);
  for (double t = 0.0; t <= 200.0; t += 12.5) CHECK(std::abs(evolve(sys, c, t).norm() - 1.0) < 1e-12);
  // t = 0 is the identity
  CHECK((evolve(sys, c, 0.0) - c).cwiseAbs().maxCoeff() < 1e-13);
  CHECK_THROWS_AS(evolve(sys, 2.0 * c, 1.0), DomainError);
  CHECK_THROWS_AS(evolve(sys, Eigen::VectorXcd::Zero(3), 1.0), DomainError);
}

TEST_CASE("trapezoid projection matches the Gauss-Hermite coefficients") {
  const auto p = make_params_from_kappa(1.05);
  const double L = p.magnetic_length;
  GaussianPacket g;
  g.dx = 0.9 * L;
  g.dy = L;
  g.k0x = std::sqrt(2.0) / L;
  for (double kx : {-0.5, g.k0x, 3.0}) {
    const auto c = packet_coefficients(g, p, kx, 25);
    for (int n = 0; n <= 25; ++n) {
      const double fc = f_coeff(g, n, kx, p).real();
      CHECK(std::abs(c[TruncatedHamiltonian::index(1, n, 25)].real() - fc) < 1e-12);
      CHECK(std::abs(c[TruncatedHamiltonian::index(0, n, 25)]) == 0.0);
    }
  }
}

TEST_CASE("oracle reproduces the analytic trajectory") {
  SUBCASE("2+1") {
    const auto p = make_params_from_kappa(1.05);
    const double L = p.magnetic_length;
    GaussianPacket g;
    g.dx = 0.9 * L;
    g.dy = L;
    g.k0x = std::sqrt(2.0) / L;
    const auto grid = TimeGrid::span(30.0, 61);
    const auto d = PacketDecomposition::build(g, p);
    const auto a = trajectory(d, p, grid);
    const auto o = oracle_run(g, p, grid);
    CHECK(o.tail_mass < 1e-10);
    CHECK(o.eigenvalues.size() == static_cast<std::size_t>(4 * (o.n_trunc + 1)));
    for (std::size_t i = 0; i < grid.count; ++i) {
      CHECK(std::abs(a.x[i] - o.trajectory.x[i]) < 1e-6 * L);
      CHECK(std::abs(a.y[i] - o.trajectory.y[i]) < 1e-6 * L);
      CHECK(std::abs(a.x_interband[i] - o.trajectory.x_interband[i]) < 1e-6 * L);
    }
  }
  SUBCASE("3+1") {
    const auto p = make_params(2e9, Dimensionality::ThreePlusOne);
    GaussianPacket g;
    g.dx = 1.35;
    g.dy = 1.5;
    g.dz = 2.0;
    g.k0x = 1.0;
    const auto grid = TimeGrid::span(15.0, 31);
    const auto d = PacketDecomposition::build(g, p);
    const auto a = trajectory(d, p, grid);
    const auto o = oracle_trajectory(g, p, grid);
    for (std::size_t i = 0; i < grid.count; ++i) {
      CHECK(std::abs(a.x[i] - o.x[i]) < 1e-6 * p.magnetic_length);
      CHECK(std::abs(a.y[i] - o.y[i]) < 1e-6 * p.magnetic_length);
    }
  }
}

TEST_CASE("fixed truncation below the packet tail is refused") {
  const auto p = make_params_from_kappa(1.05);
  GaussianPacket g;
  g.dx = 0.9 * p.magnetic_length;
  g.dy = p.magnetic_length;
  g.k0x = std::sqrt(2.0) / p.magnetic_length;
  OracleOptions o;
  o.n_trunc = 5;
  CHECK_THROWS_AS(oracle_run(g, p, TimeGrid::span(1.0, 2), o), TruncationError);
}
