#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zbsim/errors.hpp"
#include "zbsim/wavepacket.hpp"

using namespace zb;

namespace {

// kappa = 1.05 trap packet: dy = L, dx = 0.9 L, k0x = sqrt2 / L
struct Fig2b {
  SimParams params = make_params_from_kappa(1.05);
  GaussianPacket packet;
  Fig2b() {
    const double L = params.magnetic_length;
    packet.dx = 0.9 * L;
    packet.dy = L;
    packet.k0x = std::sqrt(2.0) / L;
  }
};

}  // namespace

TEST_CASE("g_z reference and normalization") {
  GaussianPacket g;
  g.dz = 1.3;
  CHECK(g_z(g, 1.0 / 1.3) == doctest::Approx(0.519441886377472024877).epsilon(1e-14));
  double s = 0.0;
  const double h = 1e-3;
  for (double k = -12.0; k <= 12.0; k += h) s += h * g_z(g, k) * g_z(g, k);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("g_x peaks at k0x") {
  GaussianPacket g;
  g.dx = 2.0;
  g.k0x = 0.7;
  CHECK(g_x(g, 0.7) > g_x(g, 0.69));
  CHECK(g_x(g, 0.7) > g_x(g, 0.71));
  CHECK(g_x(g, 0.7 + 0.2) == doctest::Approx(g_x(g, 0.7 - 0.2)).epsilon(1e-15));
}

TEST_CASE("F table against direct quadrature reference") {
  Fig2b f;
  // nested adaptive quadrature in extended precision
  const double ref[] = {0.359030812504492983237,   -0.359030812504492983237,  0.253873122176842890670,
                        -0.146573715428810993380,  0.0732868577144054966901,  -0.0327748791413531118219,
                        0.0133802883796171304870,  -0.00505727364611347562737, 0.00178801624474142739524};
  for (int n = 0; n < 9; ++n) {
    CHECK(f_coeff(f.packet, n, f.packet.k0x, f.params).real() == doctest::Approx(ref[n]).epsilon(1e-12));
    CHECK(f_coeff(f.packet, n, f.packet.k0x, f.params).imag() == 0.0);
  }
}

TEST_CASE("F does not depend on the xi rule once it is exact") {
  Fig2b f;
  for (int n : {0, 5, 17, 30}) {
    for (double kx : {-1.0, 0.3, 2.5}) {
      const double a = f_coeff(f.packet, n, kx, f.params, n / 2 + 1).real();
      const double b = f_coeff(f.packet, n, kx, f.params, n + 40).real();
      CHECK(a == doctest::Approx(b).epsilon(1e-12).scale(1e-3));
    }
  }
}

TEST_CASE("U band against nested quadrature reference") {
  Fig2b f;
  const auto d = PacketDecomposition::build(f.packet, f.params);
  const double ref[] = {-0.261991593011012, -0.176889769877954, -0.107552921354642,
                        -0.0618624014472564, -0.0342669634537992, -0.0184543333821313};
  for (int n = 0; n < 6; ++n) CHECK(d.u_super(n) == doctest::Approx(ref[n]).epsilon(1e-10));
  CHECK(d.u_diagonal(0) == doctest::Approx(0.423714798573365).epsilon(1e-10));
  CHECK(u_overlap(d, 0, 1).real() == doctest::Approx(ref[0]).epsilon(1e-10));
}

TEST_CASE("U is Hermitian and its trace is one") {
  Fig2b f;
  const auto d = PacketDecomposition::build(f.packet, f.params);
  CHECK(d.tail_mass() < 1e-10);
  CHECK(d.diagonal_sum() == doctest::Approx(1.0).epsilon(1e-9));
  for (int m = 0; m <= d.n_max(); m += 3) {
    for (int n = 0; n <= d.n_max(); n += 2) {
      CHECK(std::abs(d.u(m, n) - std::conj(d.u(n, m))) < 1e-15);
    }
    CHECK(d.u(m, m).real() == doctest::Approx(d.u_diagonal(m)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(d.u(0, d.n_max() + 1), TruncationError);
  CHECK_THROWS_AS(d.u(-1, 0), DomainError);
}

TEST_CASE("adaptive cut-off and its failure mode") {
  Fig2b f;
  const auto d = PacketDecomposition::build(f.packet, f.params);
  // smallest N that meets the tail threshold
  double partial = 0.0;
  int first = -1;
  for (int n = 0; n <= d.n_max(); ++n) {
    partial += d.u_diagonal(n);
    if (first < 0 && 1.0 - partial < 1e-10) first = n;
  }
  CHECK(first == d.n_max());

  DecompositionOptions tight;
  tight.n_max_cap = 10;
  CHECK_THROWS_AS(PacketDecomposition::build(f.packet, f.params, tight), ConvergenceError);

  DecompositionOptions forced;
  forced.n_max = 50;
  const auto big = PacketDecomposition::build(f.packet, f.params, forced);
  CHECK(big.n_max() == 50);
  for (int n = 0; n < 10; ++n) CHECK(big.u_super(n) == doctest::Approx(d.u_super(n)).epsilon(1e-12));
}

TEST_CASE("symmetric packet has no U_{n,n+1}") {
  Fig2b f;
  f.packet.k0x = 0.0;
  const auto d = PacketDecomposition::build(f.packet, f.params);
  for (int n = 0; n < d.n_max(); ++n) CHECK(std::abs(d.u_super(n)) < 1e-15);
}

TEST_CASE("kz quadrature") {
  const auto p = make_params(2e9, Dimensionality::ThreePlusOne);
  GaussianPacket g;
  g.dx = 1.35;
  g.dy = 1.5;
  g.dz = 2.0;
  g.k0x = 1.0;
  KzQuadrature q(g, p, KzOptions{});
  CHECK(q.half_range() == doctest::Approx(5.5 / 2.0));
  int last = 0;
  for (double t : {0.0, 10.0, 100.0, 1000.0}) {
    const int lv = q.level_for(t);
    CHECK(lv >= last);
    last = lv;
    const auto& rule = q.level(lv);
    CHECK(rule.size() == static_cast<std::size_t>(q.panel_count(lv) * 24));
    double s = 0.0;
    for (double w : rule.weights) s += w;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto d = PacketDecomposition::build(g, p);
  CHECK(d.three_dimensional());
  CHECK(d.gz_squared(0.0) == doctest::Approx(g_z(g, 0.0) * g_z(g, 0.0)));
}

TEST_CASE("packet validation") {
  GaussianPacket g;
  CHECK_NOTHROW(g.validate(Dimensionality::TwoPlusOne));
  g.dz = 0.0;
  CHECK_NOTHROW(g.validate(Dimensionality::TwoPlusOne));
  CHECK_THROWS_AS(g.validate(Dimensionality::ThreePlusOne), DomainError);
  g.dz = 1.0;
  g.dx = -1.0;
  CHECK_THROWS_AS(g.validate(Dimensionality::TwoPlusOne), DomainError);
  g.dx = 1.0;
  g.component = 5;
  CHECK_THROWS_AS(g.validate(Dimensionality::TwoPlusOne), DomainError);
}
