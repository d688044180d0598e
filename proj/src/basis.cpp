#include "collgate/basis.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "collgate/errors.hpp"

namespace collgate {

void OscillatorBasis::check() const {
  if (frequency <= 0 || mass <= 0) throw contract_error("basis frequency and mass must be positive");
  if (n_max < 0) throw contract_error("basis size must be non-negative");
}

bool OscillatorBasis::compatible(const OscillatorBasis& o) const {
  return frequency == o.frequency && mass == o.mass && center == o.center && n_max == o.n_max;
}

namespace {

// normalized Hermite functions h_n(u) = H_n(u) e^{-u^2/2} / sqrt(2^n n! sqrt(pi))
Eigen::VectorXd hermite_functions(int n_max, double u) {
  Eigen::VectorXd h(n_max + 1);
  h[0] = std::pow(pi, -0.25) * std::exp(-0.5 * u * u);
  if (n_max > 0) h[1] = std::sqrt(2.0) * u * h[0];
  for (int n = 1; n < n_max; ++n)
    h[n + 1] = std::sqrt(2.0 / (n + 1)) * u * h[n] - std::sqrt(double(n) / (n + 1)) * h[n - 1];
  return h;
}

// polynomial part h_n(u) e^{+u^2/2}; the recurrence is stable for this factor
// even far outside the classical turning point, where the full function is not
Eigen::VectorXd hermite_poly_parts(int n_max, double u) {
  Eigen::VectorXd h(n_max + 1);
  h[0] = std::pow(pi, -0.25);
  if (n_max > 0) h[1] = std::sqrt(2.0) * u * h[0];
  for (int n = 1; n < n_max; ++n)
    h[n + 1] = std::sqrt(2.0 / (n + 1)) * u * h[n] - std::sqrt(double(n) / (n + 1)) * h[n - 1];
  return h;
}

}  // namespace

Eigen::VectorXd OscillatorBasis::eigenfunctions_at(double x) const {
  double a = alpha();
  return std::pow(a, 0.25) * hermite_functions(n_max, std::sqrt(a) * (x - center));
}

double OscillatorBasis::eigenfunction(int n, double x) const {
  if (n < 0 || n > n_max) throw std::out_of_range("oscillator level outside basis");
  return eigenfunctions_at(x)[n];
}

double ModeCoefficients::tail_sq() const {
  int n = static_cast<int>(amps.size());
  if (n < 2) return 0.0;
  return std::norm(amps[n - 1]) + std::norm(amps[n - 2]);
}

double PairCoefficients::tail_sq() const {
  double row = amps.row(amps.rows() - 1).cwiseAbs2().maxCoeff();
  double col = amps.col(amps.cols() - 1).cwiseAbs2().maxCoeff();
  return std::max(row, col);
}

GaussHermiteRule::GaussHermiteRule(int n_nodes) {
  if (n_nodes < 1) throw contract_error("quadrature needs at least one node");
  // Golub-Welsch on the Hermite Jacobi matrix
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  for (int i = 1; i < n_nodes; ++i) {
    double b = std::sqrt(i / 2.0);
    jac(i, i - 1) = b;
    jac(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac, Eigen::EigenvaluesOnly);
  nodes = es.eigenvalues();
  weights.resize(n_nodes);
  log_weights.resize(n_nodes);
  // weights from the Christoffel function, w_i = 1 / sum_k p_k(u_i)^2 over the
  // orthonormal Hermite polynomials; the eigenvector route loses the outer
  // nodes, whose first components underflow the eigensolver's absolute accuracy
  for (int i = 0; i < n_nodes; ++i) {
    Eigen::VectorXd pk = hermite_poly_parts(n_nodes - 1, nodes[i]);
    double m = pk.cwiseAbs().maxCoeff();
    double s = (pk / m).squaredNorm();
    // total weight w_i e^{u_i^2}, assembled in log space to survive large nodes
    log_weights[i] = nodes[i] * nodes[i] - 2.0 * std::log(m) - std::log(s);
    weights[i] = std::exp(log_weights[i]);
  }
}

Eigen::MatrixXd delta_matrix_elements(const OscillatorBasis& b, double x_c) {
  Eigen::VectorXd v = b.eigenfunctions_at(x_c);
  return v * v.transpose();
}

Eigen::VectorXd project_displaced_gaussian(const OscillatorBasis& b, double gauss_freq,
                                           double gauss_center) {
  b.check();
  if (gauss_freq <= 0) throw contract_error("gaussian frequency must be positive");
  double al = b.alpha(), be = b.mass * gauss_freq, d = gauss_center - b.center;
  double lam = (be - al) / (be + al);
  double cp = std::sqrt(al) * be * d / (al + be);
  double pref = std::pow(al * be, 0.25) * std::sqrt(2.0 / (al + be)) *
                std::exp(-al * be * d * d / (2.0 * (al + be)));
  Eigen::VectorXd g(b.n_max + 1);
  g[0] = 1.0;
  if (b.n_max > 0) g[1] = std::sqrt(2.0) * cp;
  for (int n = 1; n < b.n_max; ++n)
    g[n + 1] = std::sqrt(2.0 / (n + 1)) * cp * g[n] - lam * std::sqrt(double(n) / (n + 1)) * g[n - 1];
  return pref * g;
}

double omega_tilde(const TrapParams& p) {
  return std::sqrt((p.omega * p.omega + p.omega0 * p.omega0) / 2.0);
}

double collision_offset_xi(const TrapParams& p) {
  double wt = omega_tilde(p);
  return p.x0 * p.omega0 * p.omega0 / (std::sqrt(2.0) * wt * wt);
}

OscillatorBasis relative_basis(const TrapParams& p, int n_max) {
  return OscillatorBasis{p.omega, 0.5, 0.0, n_max};
}

OscillatorBasis pair_cm_basis(const TrapParams& p, int n_max) {
  return OscillatorBasis{omega_tilde(p), 2.0, -collision_offset_xi(p) / std::sqrt(2.0), n_max};
}

OscillatorBasis pair_rel_basis(const TrapParams& p, int n_max) {
  return OscillatorBasis{omega_tilde(p), 0.5, std::sqrt(2.0) * collision_offset_xi(p), n_max};
}

ModeCoefficients initial_coeffs_same(const TrapParams& p, int n_max) {
  OscillatorBasis b = relative_basis(p, n_max);
  Eigen::VectorXd c = (project_displaced_gaussian(b, p.omega0, 2.0 * p.x0) +
                       project_displaced_gaussian(b, p.omega0, -2.0 * p.x0)) /
                      std::sqrt(2.0);
  return ModeCoefficients{b, c.cast<std::complex<double>>()};
}

PairCoefficients initial_coeffs_diff(const TrapParams& p, int n_max_R, int n_max_r) {
  OscillatorBasis bR = pair_cm_basis(p, n_max_R);
  OscillatorBasis br = pair_rel_basis(p, n_max_r);
  Eigen::VectorXd cR = project_displaced_gaussian(bR, p.omega0, 0.0);
  Eigen::VectorXd cr = project_displaced_gaussian(br, p.omega0, 2.0 * p.x0);
  Eigen::MatrixXcd amps = (cR * cr.transpose()).cast<std::complex<double>>();
  return PairCoefficients{bR, br, amps};
}

double excited_relative_value(const TrapParams& p, int n, double r) {
  double a0 = 0.5 * p.omega0;  // reduced mass 1/2 in the separated well
  double s = std::pow(a0, 0.25) / std::sqrt(2.0);
  double left = hermite_functions(n, std::sqrt(a0) * (2.0 * p.x0 + r))[n];
  double right = hermite_functions(n, std::sqrt(a0) * (2.0 * p.x0 - r))[n];
  return s * (left + right);
}

ModeCoefficients excited_relative_coeffs(const TrapParams& p, int n, int n_max) {
  if (n < 0) throw contract_error("excitation index must be non-negative");
  OscillatorBasis b = relative_basis(p, n_max);
  double mu = 0.5;
  double alpha = (mu * p.omega + mu * p.omega0) / 2.0;  // combined Gaussian decay per lobe
  GaussHermiteRule rule(4 * n_max + 8 * n + 60);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n_max + 1);
  double a0 = mu * p.omega0;
  double ab = b.alpha();
  double norm = std::pow(a0, 0.25) * std::pow(ab, 0.25) / std::sqrt(2.0);
  // split the integrand into stable polynomial parts and one log-space
  // exponent; evaluating the full Hermite functions at the outer nodes and
  // rescaling by e^{u^2} loses all significant digits
  for (int sgn : {+1, -1}) {
    double cbar = a0 * (-sgn * 2.0 * p.x0) / (mu * p.omega + a0);
    double rs = 1.0 / std::sqrt(alpha);
    for (int i = 0; i < rule.nodes.size(); ++i) {
      double x = cbar + rule.nodes[i] * rs;
      double v_lobe = std::sqrt(a0) * (2.0 * p.x0 + sgn * x);
      double v_basis = std::sqrt(ab) * (x - b.center);
      double expo = rule.log_weights[i] - 0.5 * v_lobe * v_lobe - 0.5 * v_basis * v_basis;
      double p_lobe = hermite_poly_parts(n, v_lobe)[n];
      c += (std::exp(expo) * rs * norm * p_lobe) * hermite_poly_parts(n_max, v_basis);
    }
  }
  return ModeCoefficients{b, c.cast<std::complex<double>>()};
}

}  // namespace collgate
