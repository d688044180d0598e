#pragma once
#include <Eigen/Dense>
#include <complex>

#include "collgate/model.hpp"

namespace collgate {

struct OscillatorBasis {
  double frequency = 1.0;
  double mass = 1.0;
  double center = 0.0;
  int n_max = 60;

  double alpha() const { return mass * frequency; }  // inverse width^2 (hbar=1)
  double eigenfunction(int n, double x) const;       // throws std::out_of_range for n > n_max
  Eigen::VectorXd eigenfunctions_at(double x) const; // all levels 0..n_max
  bool compatible(const OscillatorBasis& o) const;
  void check() const;
};

// interaction-picture amplitudes: the e^{-i(n+1/2) freq t} factors are carried
// separately by the dynamics/observables layers, never baked into amps
struct ModeCoefficients {
  OscillatorBasis basis;
  Eigen::VectorXcd amps;

  double norm_sq() const { return amps.squaredNorm(); }
  double tail_sq() const;  // |c_{n_max}|^2 + |c_{n_max-1}|^2
};

struct PairCoefficients {
  OscillatorBasis basis_R;
  OscillatorBasis basis_r;
  Eigen::MatrixXcd amps;  // (n_max_R+1) x (n_max_r+1)

  double norm_sq() const { return amps.squaredNorm(); }
  double tail_sq() const;  // max boundary row/column probability
};

// Gauss-Hermite rule with "total" weights: integral of f over the real line,
// for f decaying like exp(-alpha (x-c)^2), is sum_i w_i f(c + u_i/sqrt(alpha)) / sqrt(alpha)
struct GaussHermiteRule {
  Eigen::VectorXd nodes;        // u_i
  Eigen::VectorXd weights;      // w_i exp(u_i^2)
  Eigen::VectorXd log_weights;  // log of the above, for integrands assembled in log space
  explicit GaussHermiteRule(int n_nodes);

  template <class F>
  double integrate(F&& f, double alpha, double c) const {
    double s = 0, rs = 1.0 / std::sqrt(alpha);
    for (int i = 0; i < nodes.size(); ++i) s += weights[i] * f(c + nodes[i] * rs);
    return s * rs;
  }
};

// rank-1 matrix v_kl = psi_k(x_c) psi_l(x_c) (truncated contact interaction)
Eigen::MatrixXd delta_matrix_elements(const OscillatorBasis& b, double x_c = 0.0);

// closed-form coefficients of a normalized Gaussian ground state (same mass,
// frequency gauss_freq, centered at gauss_center) in the given basis;
// uniformly valid, including the gauss_freq == basis.frequency limit
Eigen::VectorXd project_displaced_gaussian(const OscillatorBasis& b,
                                           double gauss_freq, double gauss_center);

// standard bases used by the propagators
OscillatorBasis relative_basis(const TrapParams& p, int n_max = 60);     // merged well
OscillatorBasis pair_cm_basis(const TrapParams& p, int n_max = 40);      // ab case, R
OscillatorBasis pair_rel_basis(const TrapParams& p, int n_max = 40);     // ab case, r

double omega_tilde(const TrapParams& p);          // sqrt((omega^2+omega0^2)/2)
double collision_offset_xi(const TrapParams& p);  // x0 omega0^2 / (sqrt(2) omega_tilde^2)

// two-lobe relative ground state of the separated wells, expanded in the merged basis
ModeCoefficients initial_coeffs_same(const TrapParams& p, int n_max = 60);

// product state psi_-(x1) psi_+(x2) in the displaced (R, r) pair bases
PairCoefficients initial_coeffs_diff(const TrapParams& p, int n_max_R = 40, int n_max_r = 40);

// symmetrized displaced n-th excited state in the relative coordinate
double excited_relative_value(const TrapParams& p, int n, double r);
ModeCoefficients excited_relative_coeffs(const TrapParams& p, int n, int n_max = 60);

}  // namespace collgate
