#include "collgate/observables.hpp"

#include <cmath>

#include "collgate/analytic.hpp"
#include "collgate/errors.hpp"

namespace collgate {

using cd = std::complex<double>;
namespace {
constexpr cd ci(0.0, 1.0);

double wrap_pi(double x) {
  double y = std::fmod(x + pi, 2.0 * pi);
  if (y < 0) y += 2.0 * pi;
  return y - pi;
}
}  // namespace

std::complex<double> overlap_with_initial(const SameStateTrajectory& traj, int sample) {
  double t = traj.times.at(sample);
  const Eigen::VectorXcd& c = traj.snapshots.at(sample);
  double w = traj.basis.frequency;
  cd o = 0.0;
  for (int n = 0; n <= traj.basis.n_max; ++n)
    o += std::conj(c[n]) * std::exp(ci * ((n + 0.5) * w * t)) * traj.init[n];
  return o;
}

std::complex<double> overlap_with_initial(const DiffStateTrajectory& traj, int sample) {
  double t = traj.times.at(sample);
  const Eigen::MatrixXcd& c = traj.snapshots.at(sample);
  double wt = traj.basis_R.frequency;
  cd o = 0.0;
  for (int j = 0; j <= traj.basis_R.n_max; ++j)
    for (int k = 0; k <= traj.basis_r.n_max; ++k)
      o += std::conj(c(j, k)) * std::exp(ci * ((j + k + 1.0) * wt * t)) * traj.init(j, k);
  return o;
}

std::complex<double> overlap_with_free(const SameStateTrajectory& traj, int sample) {
  // the same-state drive vanishes at g = 0, so free coefficients stay at t = 0
  const Eigen::VectorXcd& c = traj.snapshots.at(sample);
  return c.dot(traj.init);  // sum conj(c_n(t)) c_n(0)
}

std::complex<double> overlap_with_free(const DiffStateTrajectory& traj,
                                       const DiffStateTrajectory& free_traj, int sample) {
  if (!traj.basis_R.compatible(free_traj.basis_R) || !traj.basis_r.compatible(free_traj.basis_r))
    throw contract_error("interacting and free trajectories use different bases");
  if (traj.times.size() != free_traj.times.size())
    throw contract_error("interacting and free trajectories use different time grids");
  const Eigen::MatrixXcd& a = traj.snapshots.at(sample);
  const Eigen::MatrixXcd& b = free_traj.snapshots.at(sample);
  return (a.conjugate().cwiseProduct(b)).sum();
}

std::vector<double> unwrap_phases(const std::vector<double>& wrapped) {
  std::vector<double> out(wrapped.size());
  if (wrapped.empty()) return out;
  out[0] = wrapped[0];
  for (size_t i = 1; i < wrapped.size(); ++i)
    out[i] = out[i - 1] + wrap_pi(wrapped[i] - wrapped[i - 1]);
  return out;
}

namespace {

template <class Traj, class FreeOverlap>
OverlapSeries make_series(const Traj& traj, FreeOverlap&& free_overlap) {
  OverlapSeries s;
  s.flags = traj.flags;
  int n = traj.sample_count();
  std::vector<double> raw(n);
  bool ill_defined = false;
  for (int i = 0; i < n; ++i) {
    s.t_over_tosc.push_back(traj.times[i] / t_osc);
    cd o0 = free_overlap(i);
    s.o0.push_back(o0);
    s.o_init.push_back(overlap_with_initial(traj, i));
    s.norms.push_back(traj.norms[i]);
    raw[i] = std::arg(o0);
    if (std::abs(o0) < 0.5) ill_defined = true;
  }
  s.phase_coll = unwrap_phases(raw);
  if (ill_defined) s.flags.push_back("phase-ill-defined");
  return s;
}

}  // namespace

OverlapSeries overlap_series(const SameStateTrajectory& traj) {
  return make_series(traj, [&](int i) { return overlap_with_free(traj, i); });
}

OverlapSeries overlap_series(const DiffStateTrajectory& traj,
                             const DiffStateTrajectory& free_traj) {
  return make_series(traj, [&](int i) { return overlap_with_free(traj, free_traj, i); });
}

double collisional_phase(const OverlapSeries& s) {
  for (const auto& f : s.flags)
    if (f == "phase-ill-defined")
      throw solver_error("collisional phase ill-defined: |O0| dropped below 0.5");
  return s.phase_coll.back();
}

double energy_shift_bb(const TrapParams& p, double t) {
  double w = p.omega, w0 = p.omega0;
  double om = breathing_width(p, t);
  double s = std::sin(w * t);
  double expo = -2.0 * w0 * p.x0 * p.x0 * (1.0 - s * s * w0 * om / (w * w));
  return p.a_bb * p.omega_perp * std::sqrt(8.0 * om / pi) * std::exp(expo);
}

double max_energy_shift_bb(const TrapParams& p) {
  double best = 0.0;
  for (int i = 0; i <= 2048; ++i)
    best = std::max(best, energy_shift_bb(p, t_osc * i / 2048.0));
  return best;
}

double perturbative_phase_period(const TrapParams& p) {
  double a0sq = 1.0 / p.omega0;  // single-atom ground-state width^2 in the separated well
  double disc = p.x0 * p.x0 * p.omega * p.omega - a0sq * p.omega0 * p.omega0 / 4.0;
  if (disc <= 0)
    throw contract_error("collision velocity below the validity bound of the closed form");
  return 4.0 * p.a_bb * p.omega_perp / std::sqrt(disc);
}

double perturbative_phase_excited(const TrapParams& p, int n) {
  // time average of g |psi0_(n)(0, t)|^2 over a period: only the diagonal
  // oscillator terms survive the integral
  ModeCoefficients c = excited_relative_coeffs(p, n, 60 + 4 * n);
  Eigen::VectorXd psi0 = c.basis.eigenfunctions_at(0.0);
  double g = 2.0 * p.a_bb * p.omega_perp;
  double acc = 0.0;
  for (int k = 0; k <= c.basis.n_max; ++k) acc += std::norm(c.amps[k]) * psi0[k] * psi0[k];
  return g * t_osc * acc;
}

double constant_velocity_phase(const TrapParams& p, double v) {
  if (v <= 0) throw contract_error("collision speed must be positive");
  return 2.0 * p.a_bb * p.omega_perp / v;
}

namespace {
void require_integer_periods(const GateSchedule& s) {
  if (s.use_shifted_period && s.period_shift != 0.0)
    throw contract_error("kinematic closed forms hold only at integer multiples of T_osc");
}
}  // namespace

double kinematic_phase_a(const TrapParams& p, const GateSchedule& s) {
  require_integer_periods(s);
  return s.n_periods * pi * (p.omega0 + 2.0 * p.omega_perp) / p.omega;
}

double kinematic_phase_b(const TrapParams& p, const GateSchedule& s) {
  require_integer_periods(s);
  return s.n_periods * pi * (p.omega + 2.0 * p.omega_perp) / p.omega;
}

PhaseRecord phase_record(const TrapParams& p, const GateSchedule& s, StatePair pair,
                         const OverlapSeries& series) {
  PhaseRecord r;
  r.pair = pair;
  r.t = series.t_over_tosc.back() * t_osc;
  r.o_abs = std::abs(series.o_init.back());
  r.o0_abs = std::abs(series.o0.back());
  r.phi_coll = series.phase_coll.back();
  r.arg_o_tau = std::arg(series.o_init.back());
  r.flags = series.flags;
  if (pair == StatePair::bb) {
    r.phi_kin_a = kinematic_phase_b(p, s);
    r.phi_kin_b = r.phi_kin_a;
  } else {
    r.phi_kin_a = kinematic_phase_a(p, s);
    r.phi_kin_b = kinematic_phase_b(p, s);
  }
  r.phi_total = r.phi_coll + r.phi_kin_a + r.phi_kin_b;
  if (max_energy_shift_bb(p) > 0.3) r.flags.push_back("perturbative-regime-violated");
  return r;
}

double phase_decomposition_residual(const TrapParams& p, const GateSchedule& s,
                                    const PhaseRecord& r) {
  double phi_measured = r.arg_o_tau + 2.0 * p.omega_perp * s.tau();
  // the same-state trajectory tracks the relative coordinate only; the
  // decoupled centre-of-mass factor is analytic
  if (r.pair == StatePair::bb) phi_measured += std::arg(cm_overlap(p, r.t));
  return wrap_pi(phi_measured - r.phi_total);
}

}  // namespace collgate
