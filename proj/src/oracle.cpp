#include "zbsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "zbsim/errors.hpp"
#include "zbsim/landau.hpp"

namespace zb {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

Eigen::MatrixXcd kron(const Matrix4c& spinor, const Eigen::MatrixXcd& osc) {
  const Eigen::Index m = osc.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(4 * m, 4 * m);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (spinor(r, c) != cd{0.0, 0.0}) out.block(r * m, c * m, m, m) = spinor(r, c) * osc;
    }
  }
  return out;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Gaussian envelope of |g_x|^2 h_m h_n in kx.
struct KxEnvelope {
  double center;
  double precision;
};

KxEnvelope kx_envelope(const GaussianPacket& packet, const SimParams& params) {
  const double l2 = params.magnetic_length * params.magnetic_length;
  const double a = packet.dx * packet.dx + l2 * l2 / (packet.dy * packet.dy + l2);
  return {packet.dx * packet.dx * packet.k0x / a, a};
}

struct Projection {
  std::vector<double> kx;
  std::vector<double> weights;
  std::vector<Eigen::VectorXcd> coeffs;  // length 4 (n_trunc + 1)
};

Projection project_packet(const GaussianPacket& packet, const SimParams& params, int n_trunc,
                          const OracleOptions& options) {
  if (options.kx_points < 3) throw DomainError("oracle needs at least 3 kx points");
  const auto env = kx_envelope(packet, params);
  const double half = options.kx_half_width / std::sqrt(env.precision);
  const double h = 2.0 * half / (options.kx_points - 1);
  Projection p;
  for (int i = 0; i < options.kx_points; ++i) {
    const double kx = env.center - half + i * h;
    p.kx.push_back(kx);
    // trapezoid; the end points carry negligible weight
    p.weights.push_back((i == 0 || i == options.kx_points - 1) ? 0.5 * h : h);
    p.coeffs.push_back(packet_coefficients(packet, params, kx, n_trunc, options.xi_step));
  }
  return p;
}

double tail_of(const Projection& p, int n_trunc, int component) {
  double mass = 0.0;
  for (std::size_t i = 0; i < p.kx.size(); ++i) {
    const auto& c = p.coeffs[i];
    mass += p.weights[i] * c.segment((component - 1) * (n_trunc + 1), n_trunc + 1).squaredNorm();
  }
  return 1.0 - mass;
}

}  // namespace

DiracMatrices standard_dirac_matrices() {
  const cd o{0.0, 0.0}, one{1.0, 0.0}, i{0.0, 1.0};
  DiracMatrices d;
  // alpha_k = [[0, sigma_k], [sigma_k, 0]], beta = diag(1, 1, -1, -1)
  d.alpha_x << o, o, o, one,
               o, o, one, o,
               o, one, o, o,
               one, o, o, o;
  d.alpha_y << o, o, o, -i,
               o, o, i, o,
               o, -i, o, o,
               i, o, o, o;
  d.alpha_z << o, o, one, o,
               o, o, o, -one,
               one, o, o, o,
               o, -one, o, o;
  d.beta << one, o, o, o,
            o, one, o, o,
            o, o, -one, o,
            o, o, o, -one;
  return d;
}

Eigen::MatrixXcd lowering_operator(int n_trunc) {
  if (n_trunc < 0) throw DomainError("truncation must be non-negative");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n_trunc + 1, n_trunc + 1);
  for (int n = 1; n <= n_trunc; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

TruncatedHamiltonian build_matrix(double kx, double kz, int n_trunc, const SimParams& params) {
  if (n_trunc < 0) throw DomainError("truncation must be non-negative");
  const auto d = standard_dirac_matrices();
  const Eigen::MatrixXcd a = lowering_operator(n_trunc);
  const Eigen::MatrixXcd ad = a.adjoint();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n_trunc + 1, n_trunc + 1);
  const double hw = params.field_ratio_b * params.mass_energy;
  const Eigen::MatrixXcd pi_x = -0.5 * hw * (a + ad);
  const Eigen::MatrixXcd pi_y = 0.5 * hw * kI * (ad - a);
  const Eigen::MatrixXcd pi_z = kz * params.speed * id;
  TruncatedHamiltonian h;
  h.n_trunc = n_trunc;
  h.kx = kx;
  h.kz = kz;
  h.matrix = kron(d.alpha_x, pi_x) + kron(d.alpha_y, pi_y) + kron(d.alpha_z, pi_z) +
             kron(d.beta, params.mass_energy * id);
  return h;
}

EigenSystem::EigenSystem(const TruncatedHamiltonian& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix);
  if (solver.info() != Eigen::Success) throw ConvergenceError("Hermitian eigensolver failed");
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Eigen::VectorXcd evolve(const EigenSystem& system, const Eigen::VectorXcd& coeffs, double t) {
  if (coeffs.size() != system.dimension()) throw DomainError("coefficient vector has the wrong dimension");
  if (std::abs(coeffs.norm() - 1.0) > 1e-10) throw DomainError("initial coefficients are not normalized");
  Eigen::VectorXcd amp = system.vectors().adjoint() * coeffs;
  for (Eigen::Index j = 0; j < amp.size(); ++j) amp[j] *= std::exp(-kI * (system.energies()[j] * t));
  return system.vectors() * amp;
}

Eigen::VectorXcd evolve(const TruncatedHamiltonian& h, const Eigen::VectorXcd& coeffs, double t) {
  return evolve(EigenSystem(h), coeffs, t);
}

Eigen::VectorXcd packet_coefficients(const GaussianPacket& packet, const SimParams& params, double kx,
                                     int n_trunc, double xi_step) {
  packet.validate(params.dimensionality);
  if (!(xi_step > 0.0)) throw DomainError("xi step must be positive");
  const double length = params.magnetic_length;
  const double xi0 = kx * length;
  // the integrand is exp(-beta (xi - mu)^2) times a polynomial of degree n
  const double alpha = length * length / (2.0 * packet.dy * packet.dy);
  const double beta = 0.5 + alpha;
  const double mu = -alpha * xi0 / beta;
  const double half = (10.0 + std::sqrt(2.0 * n_trunc + 2.0)) / std::sqrt(beta);
  const int steps = static_cast<int>(std::ceil(2.0 * half / xi_step));
  const double h = 2.0 * half / steps;
  const double norm_y = std::sqrt(length) * std::pow(std::numbers::pi * packet.dy * packet.dy, -0.25);

  std::vector<double> proj(static_cast<std::size_t>(n_trunc) + 1, 0.0);
  std::vector<double> psi(static_cast<std::size_t>(n_trunc) + 1);
  for (int s = 0; s <= steps; ++s) {
    const double xi = mu - half + s * h;
    const double y = xi + xi0;
    const double w = ((s == 0 || s == steps) ? 0.5 * h : h) * norm_y * std::exp(-alpha * y * y);
    oscillator_functions(xi, n_trunc, psi);
    for (int n = 0; n <= n_trunc; ++n) proj[n] += w * psi[n];
  }
  const double gx = g_x(packet, kx);
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(4 * (n_trunc + 1));
  for (int n = 0; n <= n_trunc; ++n) {
    c[TruncatedHamiltonian::index(packet.component - 1, n, n_trunc)] = gx * proj[n];
  }
  return c;
}

OracleResult oracle_run(const GaussianPacket& packet, const SimParams& params, const TimeGrid& grid,
                        const OracleOptions& options) {
  packet.validate(params.dimensionality);
  if (grid.count == 0) throw DomainError("empty time grid");

  // truncation from the packet tail
  int n_trunc = options.n_trunc;
  Projection proj;
  double tail = 0.0;
  if (n_trunc > 0) {
    proj = project_packet(packet, params, n_trunc, options);
    tail = tail_of(proj, n_trunc, packet.component);
  } else {
    int probe = 32;
    while (true) {
      auto trial = project_packet(packet, params, probe, options);
      int found = -1;
      double mass = 0.0;
      for (int n = 0; n <= probe; ++n) {
        for (std::size_t i = 0; i < trial.kx.size(); ++i) {
          const auto v = trial.coeffs[i][TruncatedHamiltonian::index(packet.component - 1, n, probe)];
          mass += trial.weights[i] * std::norm(v);
        }
        if (1.0 - mass < options.tail_threshold) {
          found = n;
          break;
        }
      }
      if (found >= 0) {
        n_trunc = found + options.n_trunc_margin;
        break;
      }
      if (probe >= 512) throw ConvergenceError("oracle truncation did not converge");
      probe *= 2;
    }
    proj = project_packet(packet, params, n_trunc, options);
    tail = tail_of(proj, n_trunc, packet.component);
  }
  if (tail > options.tail_threshold) {
    throw TruncationError(fmt::format("oracle packet tail {:.3e} above threshold at n_trunc={}", tail, n_trunc));
  }

  const int dim = 4 * (n_trunc + 1);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < proj.kx.size(); ++i) {
    rho.noalias() += proj.weights[i] * (proj.coeffs[i] * proj.coeffs[i].adjoint());
  }

  std::vector<double> kz_nodes{0.0};
  std::vector<double> kz_weights{1.0};
  if (params.dimensionality == Dimensionality::ThreePlusOne) {
    KzQuadrature kzq(packet, params, options.kz);
    const double t_max = options.t_max_3d > 0.0 ? options.t_max_3d : std::abs(grid.end());
    const auto& rule = kzq.level(kzq.level_for(t_max));
    kz_nodes = rule.nodes;
    kz_weights = rule.weights;
  }

  const Eigen::MatrixXcd a_full =
      kron(Matrix4c::Identity(), lowering_operator(n_trunc));
  std::vector<cd> a_intra(grid.count), a_inter(grid.count), ad_intra(grid.count), ad_inter(grid.count);

  OracleResult result;
  result.n_trunc = n_trunc;
  result.tail_mass = tail;
  const std::size_t central = kz_nodes.size() / 2;

  for (std::size_t q = 0; q < kz_nodes.size(); ++q) {
    const EigenSystem sys(build_matrix(0.0, kz_nodes[q], n_trunc, params));
    if (q == central) {
      result.eigenvalues.assign(sys.energies().data(), sys.energies().data() + dim);
    }
    const Eigen::MatrixXcd rho_t = sys.vectors().adjoint() * rho * sys.vectors();
    const Eigen::MatrixXcd a_t = sys.vectors().adjoint() * a_full * sys.vectors();
    // states the packet does not touch drop out exactly (rho is PSD)
    std::vector<int> support;
    const double trace = rho_t.diagonal().real().sum();
    for (int j = 0; j < dim; ++j) {
      if (rho_t(j, j).real() > 1e-30 * trace) support.push_back(j);
    }
    const int m = static_cast<int>(support.size());
    Eigen::MatrixXcd ma_same = Eigen::MatrixXcd::Zero(m, m), ma_opp = ma_same;
    Eigen::MatrixXcd mad_same = ma_same, mad_opp = ma_same;
    Eigen::VectorXd e(m);
    for (int r = 0; r < m; ++r) {
      const int j = support[r];
      e[r] = sys.energies()[j];
      for (int c = 0; c < m; ++c) {
        const int k = support[c];
        const bool same = (sys.energies()[j] > 0.0) == (sys.energies()[k] > 0.0);
        // <A> = sum_jk rho_jk(t) A_kj, rho_jk(t) = rho_jk exp(-i (E_j - E_k) t)
        const cd ma = rho_t(j, k) * a_t(k, j);
        const cd mad = rho_t(j, k) * std::conj(a_t(j, k));
        (same ? ma_same : ma_opp)(r, c) = ma;
        (same ? mad_same : mad_opp)(r, c) = mad;
      }
    }
    const double w = kz_weights[q];
    Eigen::VectorXcd phase(m);
    for (std::size_t i = 0; i < grid.count; ++i) {
      const double t = grid.at(i);
      for (int r = 0; r < m; ++r) phase[r] = std::exp(kI * (e[r] * t));
      const Eigen::VectorXcd& left = phase;  // dot() conjugates
      a_intra[i] += w * left.dot(ma_same * phase);
      a_inter[i] += w * left.dot(ma_opp * phase);
      ad_intra[i] += w * left.dot(mad_same * phase);
      ad_inter[i] += w * left.dot(mad_opp * phase);
    }
  }

  auto& traj = result.trajectory;
  traj.mode = params.dimensionality;
  traj.provenance = "oracle " + describe(packet, params, n_trunc);
  for (auto* v : {&traj.times, &traj.x, &traj.y, &traj.x_interband, &traj.y_interband, &traj.x_intraband,
                  &traj.y_intraband}) {
    v->resize(grid.count);
  }
  for (std::size_t i = 0; i < grid.count; ++i) {
    LadderExpectation ex{};
    ex.a_intraband = a_intra[i];
    ex.a_interband = a_inter[i];
    ex.adag_intraband = ad_intra[i];
    ex.adag_interband = ad_inter[i];
    ex.a = a_intra[i] + a_inter[i];
    ex.adag = ad_intra[i] + ad_inter[i];
    const auto p = position_from(ex, params.magnetic_length);
    traj.times[i] = grid.at(i);
    traj.x[i] = p.x;
    traj.y[i] = p.y;
    traj.x_interband[i] = p.x_interband;
    traj.y_interband[i] = p.y_interband;
    traj.x_intraband[i] = p.x_intraband;
    traj.y_intraband[i] = p.y_intraband;
    traj.imag_residue = std::max(traj.imag_residue, p.imag_residue);
  }
  return result;
}

Trajectory oracle_trajectory(const GaussianPacket& packet, const SimParams& params, const TimeGrid& grid,
                             const OracleOptions& options) {
  return oracle_run(packet, params, grid, options).trajectory;
}

SpectrumComparison compare_spectrum(int n_trunc, double kz, const SimParams& params, double interior_fraction,
                                    double tolerance) {
  if (n_trunc < 1) throw DomainError("spectrum comparison needs n_trunc >= 1");
  const EigenSystem sys(build_matrix(0.0, kz, n_trunc, params));
  const int n_interior = static_cast<int>(std::floor(interior_fraction * n_trunc));
  const double cut = 0.5 * (energy(n_interior, kz, params) + energy(n_interior + 1, kz, params));

  std::vector<double> expected;
  // n = 0 has one state per branch; the hard-wall edge adds one more pair at
  // +-E_0 (the unpaired c1|N>, c3|N> block), n >= 1 has two spin states.
  const double e0 = energy(0, kz, params);
  for (int rep = 0; rep < 2; ++rep) {
    expected.push_back(e0);
    expected.push_back(-e0);
  }
  for (int n = 1; n <= n_interior; ++n) {
    const double e = energy(n, kz, params);
    for (int rep = 0; rep < 2; ++rep) {
      expected.push_back(e);
      expected.push_back(-e);
    }
  }
  std::sort(expected.begin(), expected.end());
  std::vector<double> found;
  for (Eigen::Index j = 0; j < sys.energies().size(); ++j) {
    if (std::abs(sys.energies()[j]) < cut) found.push_back(sys.energies()[j]);
  }
  std::sort(found.begin(), found.end());

  SpectrumComparison cmp;
  cmp.levels_checked = n_interior + 1;
  cmp.multiplicity_mismatches = static_cast<int>(
      std::max(expected.size(), found.size()) - std::min(expected.size(), found.size()));
  if (cmp.multiplicity_mismatches == 0) {
    for (std::size_t i = 0; i < expected.size(); ++i) {
      cmp.max_relative_deviation =
          std::max(cmp.max_relative_deviation, std::abs(found[i] - expected[i]) / std::abs(expected[i]));
    }
  } else {
    cmp.max_relative_deviation = INFINITY;
  }
  cmp.passed = cmp.multiplicity_mismatches == 0 && cmp.max_relative_deviation <= tolerance;
  return cmp;
}

Matrix4c delta_matrix() {
  const auto d = standard_dirac_matrices();
  return d.alpha_x * d.alpha_y * d.alpha_z * d.beta;
}

Matrix4c moss_operator() {
  const auto d = standard_dirac_matrices();
  const Matrix4c delta = delta_matrix();
  return delta * (delta + d.beta) / std::sqrt(2.0);
}

Eigen::MatrixXcd transformed_block_hamiltonian(double kz, int n_trunc, const SimParams& params) {
  const int m = n_trunc + 1;
  const Eigen::MatrixXcd a = lowering_operator(n_trunc);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m, m);
  const double hw = params.field_ratio_b * params.mass_energy;
  const double mc2 = params.mass_energy;
  const double pz = params.speed * kz;
  Eigen::MatrixXcd hp = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  hp.block(0, 0, m, m) = (pz - kI * mc2) * id;
  hp.block(0, m, m, m) = -hw * a;
  hp.block(m, 0, m, m) = -hw * a.adjoint();
  hp.block(m, m, m, m) = (-pz - kI * mc2) * id;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(4 * m, 4 * m);
  out.block(0, 2 * m, 2 * m, 2 * m) = hp;
  out.block(2 * m, 0, 2 * m, 2 * m) = hp.adjoint();
  return out;
}

TransformReport check_transform(const SimParams& params, int n_trunc, double kz) {
  TransformReport r;
  const Matrix4c delta = delta_matrix();
  const Matrix4c p = moss_operator();
  r.delta_square_deviation = (delta * delta - Matrix4c::Identity()).cwiseAbs().maxCoeff();
  r.unitarity_deviation = (p * p.adjoint() - Matrix4c::Identity()).cwiseAbs().maxCoeff();

  const auto h = build_matrix(0.0, kz, n_trunc, params);
  const Eigen::MatrixXcd p_full = kron(p, Eigen::MatrixXcd::Identity(n_trunc + 1, n_trunc + 1));
  const Eigen::MatrixXcd transformed = p_full * h.matrix * p_full.adjoint();
  const Eigen::MatrixXcd printed = transformed_block_hamiltonian(kz, n_trunc, params);
  r.block_form_deviation = max_abs(transformed - printed);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s1(h.matrix, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> s2(printed, Eigen::EigenvaluesOnly);
  for (Eigen::Index j = 0; j < s1.eigenvalues().size(); ++j) {
    const double e1 = s1.eigenvalues()[j];
    const double e2 = s2.eigenvalues()[j];
    r.spectrum_deviation = std::max(r.spectrum_deviation, std::abs(e1 - e2) / std::max(1.0, std::abs(e1)));
  }
  r.passed = r.delta_square_deviation <= 1e-14 && r.unitarity_deviation <= 1e-14 &&
             r.block_form_deviation <= 1e-12 && r.spectrum_deviation <= 1e-10;
  return r;
}

std::string TransformReport::summary() const {
  return fmt::format("|delta^2-1|={:.2e} |PP^dag-1|={:.2e} |PHP^dag-H'|={:.2e} spectrum={:.2e} -> {}",
                     delta_square_deviation, unitarity_deviation, block_form_deviation, spectrum_deviation,
                     passed ? "ok" : "FAILED");
}

}  // namespace zb
