#include "collgate/fidelity.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "collgate/errors.hpp"

namespace collgate {

GateUnitary gate_unitary(const GatePhases& g) {
  GateUnitary u;
  // phases of the diagonal unitary, e^{i theta_{alpha beta}}
  u.diag_phases = {-2.0 * g.phi_a, -(g.phi_a + g.phi_b + g.phi_ab),
                   -(g.phi_a + g.phi_b + g.phi_ab), -(2.0 * g.phi_b + g.phi_bb)};
  u.chi = u.diag_phases[0] + u.diag_phases[3] - u.diag_phases[1] - u.diag_phases[2];
  double d = std::fmod(u.chi - pi, 2.0 * pi);
  if (d < -pi) d += 2.0 * pi;
  if (d > pi) d -= 2.0 * pi;
  u.residue = std::abs(d);
  return u;
}

double fidelity_full(double a, double b, double c, double phi_bb) {
  if (a < 0 || a > 1 || b < 0 || b > 1 || c < 0 || c > 1)
    throw contract_error("overlap-root moduli must lie in [0, 1]");
  double x = std::cos(phi_bb);
  Eigen::Matrix4d g;
  g << 1, a, a, -b * b * x,
       a, 1, a * a, -b * c * x,
       a, a * a, 1, -b * c * x,
       -b * b * x, -b * c * x, -b * c * x, 1;
  // exact minimum of p^T G p over the probability simplex: enumerate the
  // faces, solve the equality-constrained stationarity system on each, and
  // keep feasible candidates (vertices are covered by the one-element faces)
  double best = std::numeric_limits<double>::infinity();
  for (int mask = 1; mask < 16; ++mask) {
    int idx[4], k = 0;
    for (int i = 0; i < 4; ++i)
      if (mask & (1 << i)) idx[k++] = i;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k + 1, k + 1);
    for (int r = 0; r < k; ++r)
      for (int s = 0; s < k; ++s) m(r, s) = 2.0 * g(idx[r], idx[s]);
    for (int r = 0; r < k; ++r) m(r, k) = m(k, r) = 1.0;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
    rhs[k] = 1.0;
    Eigen::VectorXd sol = m.fullPivLu().solve(rhs);
    if ((m * sol - rhs).cwiseAbs().maxCoeff() > 1e-9) continue;  // singular face
    bool feasible = true;
    for (int r = 0; r < k; ++r)
      if (sol[r] < -1e-12) feasible = false;
    if (!feasible) continue;
    double val = 0.0;
    for (int r = 0; r < k; ++r)
      for (int s = 0; s < k; ++s) val += sol[r] * g(idx[r], idx[s]) * sol[s];
    best = std::min(best, val);
  }
  if (best < -1e-9 || best > 1.0 + 1e-9)
    throw consistency_error("fidelity left [0, 1]: " + std::to_string(best));
  return std::min(1.0, std::max(0.0, best));
}

double fidelity_simple(double o0_abs, double phi_bb) {
  return 0.5 * (1.0 - o0_abs * std::cos(phi_bb));
}

std::vector<double> thermal_weights(double temperature, int n_cut) {
  if (temperature < 0) throw contract_error("temperature must be non-negative");
  if (n_cut < 1) throw contract_error("thermal cutoff must be at least 1");
  std::vector<double> p(n_cut + 1, 0.0);
  if (temperature == 0) {
    p[0] = 1.0;
    return p;
  }
  double gamma = std::exp(-1.0 / temperature);
  double norm = 0.0;
  for (int n = 0; n <= n_cut; ++n) {
    p[n] = (1.0 - gamma) * std::pow(gamma, n);
    norm += p[n];
  }
  for (auto& v : p) v /= norm;
  return p;
}

ThermalFidelity fidelity_thermal(const std::vector<ExcitedChannel>& per_n,
                                 double temperature) {
  if (per_n.empty()) throw contract_error("thermal fidelity needs per-excitation data");
  int n_cut = static_cast<int>(per_n.size()) - 1;
  ThermalFidelity f;
  f.gamma = (temperature > 0) ? std::exp(-1.0 / temperature) : 0.0;
  std::vector<double> p = (n_cut >= 1) ? thermal_weights(temperature, n_cut)
                                       : std::vector<double>{1.0};
  std::vector<double> q(per_n.size());
  for (size_t n = 0; n < per_n.size(); ++n)
    q[n] = per_n[n].o0_abs * std::cos(per_n[n].phi);
  double acc = 0.0;
  for (size_t n = 0; n < per_n.size(); ++n) acc += p[n] * q[n];
  f.full = 0.5 * (1.0 - acc);
  double f0 = 0.5 * (1.0 - q[0]);
  double corr = 0.0;
  for (size_t n = 1; n < per_n.size(); ++n)
    corr += std::pow(f.gamma, static_cast<double>(n)) * (q[n] - q[n - 1]);
  f.expansion = f0 - 0.5 * corr;
  return f;
}

}  // namespace collgate
