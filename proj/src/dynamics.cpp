#include "collgate/dynamics.hpp"

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>
#include <cmath>

#include "collgate/analytic.hpp"
#include "collgate/errors.hpp"

// The stock Eigen adapter deduces a complex norm for complex states and falls
// back to range-based copy, which Eigen matrices do not support; patch both.
namespace boost {
namespace numeric {
namespace odeint {

template <>
struct vector_space_norm_inf<Eigen::VectorXcd> {
  typedef double result_type;
  double operator()(const Eigen::VectorXcd& v) const { return v.cwiseAbs().maxCoeff(); }
};

template <>
struct vector_space_norm_inf<Eigen::MatrixXcd> {
  typedef double result_type;
  double operator()(const Eigen::MatrixXcd& m) const { return m.cwiseAbs().maxCoeff(); }
};

template <>
struct copy_impl<Eigen::VectorXcd, Eigen::VectorXcd> {
  static void copy(const Eigen::VectorXcd& from, Eigen::VectorXcd& to) { to = from; }
};

template <>
struct copy_impl<Eigen::MatrixXcd, Eigen::MatrixXcd> {
  static void copy(const Eigen::MatrixXcd& from, Eigen::MatrixXcd& to) { to = from; }
};

}  // namespace odeint
}  // namespace numeric
}  // namespace boost

namespace collgate {

namespace odeint = boost::numeric::odeint;
using cd = std::complex<double>;

namespace {

constexpr cd ci(0.0, 1.0);

std::vector<double> sample_times(const GateSchedule& s, int per_period) {
  double tau = s.tau();
  int n = static_cast<int>(std::lround(s.tau_over_tosc() * per_period));
  std::vector<double> t(n + 1);
  for (int i = 0; i <= n; ++i) t[i] = tau * i / n;
  return t;
}

// appends a flag once
void flag_once(std::vector<std::string>& flags, const std::string& f) {
  for (const auto& e : flags)
    if (e == f) return;
  flags.push_back(f);
}

template <class State, class Traj>
void check_sample(Traj& traj, const State& c, double norm0, double t,
                  const SolverSettings& o, double tail) {
  double norm = c.squaredNorm();
  traj.norms.push_back(norm);
  double periods = std::max(1.0, t / t_osc);
  double drift = std::abs(norm - norm0);
  if (drift > o.norm_drift_error * periods)
    throw solver_error("norm drift " + std::to_string(drift) + " at t/T_osc = " +
                       std::to_string(t / t_osc) + " exceeds tolerance");
  if (drift > o.norm_drift_warn * periods) flag_once(traj.flags, "norm-drift");
  if (tail > o.tail_error)
    throw truncation_error("boundary-mode population " + std::to_string(tail) +
                           " at t/T_osc = " + std::to_string(t / t_osc) +
                           "; increase the basis size");
  if (tail > o.tail_warn) flag_once(traj.flags, "basis-tail");
}

int nearest_index(const std::vector<double>& times, double t) {
  if (times.size() < 2) throw std::out_of_range("trajectory holds no samples");
  double dt = times[1] - times[0];
  if (t < -0.5 * dt || t > times.back() + 0.5 * dt)
    throw std::out_of_range("time outside the propagated interval");
  long i = std::lround(t / dt);
  if (i < 0) i = 0;
  if (i >= static_cast<long>(times.size())) i = static_cast<long>(times.size()) - 1;
  return static_cast<int>(i);
}

}  // namespace

int SameStateTrajectory::index_at(double t) const { return nearest_index(times, t); }
int DiffStateTrajectory::index_at(double t) const { return nearest_index(times, t); }

SameStateTrajectory propagate_same(const ModeCoefficients& init, const TrapParams& p,
                                   const GateSchedule& s, const SolverSettings& o) {
  s.check();
  OscillatorBasis expect = relative_basis(p, init.basis.n_max);
  if (!init.basis.compatible(expect))
    throw contract_error("initial coefficients not expressed in the merged-well relative basis");
  if (init.amps.size() != init.basis.n_max + 1)
    throw contract_error("coefficient vector size does not match the basis");

  SameStateTrajectory traj;
  traj.params = p;
  traj.schedule = s;
  traj.basis = init.basis;
  traj.init = init.amps;
  traj.coupling = effective_1d_coupling(p, StatePair::bb, &traj.flags);

  const int n = init.basis.n_max;
  const double w = p.omega, g = traj.coupling;
  const Eigen::VectorXd psi0 = init.basis.eigenfunctions_at(0.0);

  auto rhs = [&](const Eigen::VectorXcd& c, Eigen::VectorXcd& dc, double t) {
    cd s_acc = 0.0;
    Eigen::VectorXcd en(n + 1);
    for (int k = 0; k <= n; ++k) {
      en[k] = std::exp(ci * (w * t * k));
      s_acc += psi0[k] * std::conj(en[k]) * c[k];
    }
    dc = (-ci * g * s_acc) * (psi0.array() * en.array()).matrix();
  };

  std::vector<double> times = sample_times(s, o.samples_per_period);
  double norm0 = init.amps.squaredNorm();
  Eigen::VectorXcd state = init.amps;

  using stepper_t = odeint::runge_kutta_dopri5<Eigen::VectorXcd, double, Eigen::VectorXcd,
                                               double, odeint::vector_space_algebra>;
  auto controlled = odeint::make_controlled(o.abs_tol, o.rel_tol, stepper_t());
  auto observer = [&](const Eigen::VectorXcd& c, double t) {
    traj.times.push_back(t);
    traj.snapshots.push_back(c);
    double tail = (n >= 1) ? std::norm(c[n]) + std::norm(c[n - 1]) : 0.0;
    check_sample(traj, c, norm0, t, o, tail);
  };
  try {
    odeint::integrate_times(controlled, rhs, state, times.begin(), times.end(),
                            times[1] - times[0], observer);
  } catch (const odeint::no_progress_error& e) {
    throw solver_error(std::string("integrator stalled: ") + e.what());
  }
  return traj;
}

DiffStateTrajectory propagate_diff(const PairCoefficients& init, const TrapParams& p,
                                   const GateSchedule& s, const SolverSettings& o) {
  s.check();
  OscillatorBasis eR = pair_cm_basis(p, init.basis_R.n_max);
  OscillatorBasis er = pair_rel_basis(p, init.basis_r.n_max);
  if (!init.basis_R.compatible(eR) || !init.basis_r.compatible(er))
    throw contract_error("initial coefficients not expressed in the displaced pair bases");
  if (init.amps.rows() != init.basis_R.n_max + 1 || init.amps.cols() != init.basis_r.n_max + 1)
    throw contract_error("coefficient matrix shape does not match the bases");

  DiffStateTrajectory traj;
  traj.params = p;
  traj.schedule = s;
  traj.basis_R = init.basis_R;
  traj.basis_r = init.basis_r;
  traj.init = init.amps;
  traj.coupling = effective_1d_coupling(p, StatePair::ab, &traj.flags);

  const int nR = init.basis_R.n_max, nr = init.basis_r.n_max;
  const double wt = omega_tilde(p);
  const double xi = collision_offset_xi(p);
  const double w = p.omega, w0 = p.omega0, g = traj.coupling;
  const double kap = (w0 * w0 - w * w) / (4.0 * wt);
  const double c_lin = (w0 * w0 - w * w) * xi / (2.0 * std::sqrt(2.0) * std::sqrt(wt));
  const double shift = std::pow((w0 * w0 - w * w) * xi, 2) / (4.0 * w0 * w0);
  const Eigen::VectorXd psir0 = init.basis_r.eigenfunctions_at(0.0);
  Eigen::VectorXd sqj(nR + 1), sqk(nr + 1);
  for (int j = 0; j <= nR; ++j) sqj[j] = std::sqrt(double(j));
  for (int k = 0; k <= nr; ++k) sqk[k] = std::sqrt(double(k));

  auto rhs = [&](const Eigen::MatrixXcd& c, Eigen::MatrixXcd& dc, double t) {
    cd e = std::exp(ci * (wt * t));
    cd e2 = e * e, ec = std::conj(e), ec2 = ec * ec;
    dc.setZero(nR + 1, nr + 1);
    for (int j = 0; j <= nR; ++j)
      for (int k = 0; k <= nr; ++k) {
        cd a = 0.0;
        if (j < nR && k < nr) a += ec2 * sqj[j + 1] * sqk[k + 1] * c(j + 1, k + 1);
        if (j < nR && k > 0) a += sqj[j + 1] * sqk[k] * c(j + 1, k - 1);
        if (j > 0 && k < nr) a += sqj[j] * sqk[k + 1] * c(j - 1, k + 1);
        if (j > 0 && k > 0) a += e2 * sqj[j] * sqk[k] * c(j - 1, k - 1);
        cd l = 0.0;
        if (j > 0) l += e * sqj[j] * c(j - 1, k);
        if (k > 0) l -= e * sqk[k] * c(j, k - 1);
        if (j < nR) l += ec * sqj[j + 1] * c(j + 1, k);
        if (k < nr) l -= ec * sqk[k + 1] * c(j, k + 1);
        dc(j, k) = ci * kap * a + ci * c_lin * l - ci * shift * c(j, k);
      }
    if (g != 0.0) {
      Eigen::VectorXcd ph(nr + 1);
      for (int k = 0; k <= nr; ++k) ph[k] = std::exp(ci * (wt * t * k));
      Eigen::VectorXcd weighted = (psir0.array() * ph.array().conjugate()).matrix();
      Eigen::VectorXcd sj = c * weighted;  // s_j = sum_l c_jl psi_l(0) e^{-i wt t l}
      Eigen::VectorXcd drive = (psir0.array() * ph.array()).matrix();
      dc.noalias() += (-ci * g) * (sj * drive.transpose());
    }
  };

  std::vector<double> times = sample_times(s, o.samples_per_period);
  double norm0 = init.amps.squaredNorm();
  Eigen::MatrixXcd state = init.amps;

  using stepper_t = odeint::runge_kutta_dopri5<Eigen::MatrixXcd, double, Eigen::MatrixXcd,
                                               double, odeint::vector_space_algebra>;
  auto controlled = odeint::make_controlled(o.abs_tol, o.rel_tol, stepper_t());
  auto observer = [&](const Eigen::MatrixXcd& c, double t) {
    traj.times.push_back(t);
    traj.snapshots.push_back(c);
    double tail = std::max(c.row(nR).cwiseAbs2().maxCoeff(), c.col(nr).cwiseAbs2().maxCoeff());
    check_sample(traj, c, norm0, t, o, tail);
  };
  try {
    odeint::integrate_times(controlled, rhs, state, times.begin(), times.end(),
                            times[1] - times[0], observer);
  } catch (const odeint::no_progress_error& e) {
    throw solver_error(std::string("integrator stalled: ") + e.what());
  }
  return traj;
}

namespace {

void nyquist_check(const OscillatorBasis& b, const Eigen::VectorXd& grid) {
  if (grid.size() < 2) throw contract_error("reconstruction grid needs at least two points");
  double dx = grid[1] - grid[0];
  double k_max = std::sqrt(2.0 * b.mass * b.frequency * (b.n_max + 0.5));
  if (dx > pi / k_max)
    throw contract_error("grid spacing cannot resolve the highest basis mode");
}

}  // namespace

Eigen::VectorXcd reconstruct_wavefunction(const ModeCoefficients& state, double t,
                                          const Eigen::VectorXd& grid) {
  nyquist_check(state.basis, grid);
  int n = state.basis.n_max;
  Eigen::VectorXcd phases(n + 1);
  for (int k = 0; k <= n; ++k)
    phases[k] = std::exp(-ci * ((k + 0.5) * state.basis.frequency * t)) * state.amps[k];
  Eigen::VectorXcd out(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    out[i] = state.basis.eigenfunctions_at(grid[i]).cast<cd>().dot(phases);
  return out;
}

Eigen::VectorXcd reconstruct_wavefunction(const SameStateTrajectory& traj, int sample,
                                          const Eigen::VectorXd& grid) {
  ModeCoefficients mc{traj.basis, traj.snapshots.at(sample)};
  return reconstruct_wavefunction(mc, traj.times.at(sample), grid);
}

Eigen::MatrixXcd reconstruct_wavefunction(const DiffStateTrajectory& traj, int sample,
                                          const Eigen::VectorXd& grid_R,
                                          const Eigen::VectorXd& grid_r) {
  nyquist_check(traj.basis_R, grid_R);
  nyquist_check(traj.basis_r, grid_r);
  double t = traj.times.at(sample);
  const Eigen::MatrixXcd& c = traj.snapshots.at(sample);
  int nR = traj.basis_R.n_max, nr = traj.basis_r.n_max;
  double wt = traj.basis_R.frequency;
  Eigen::MatrixXcd ph(nR + 1, nr + 1);
  for (int j = 0; j <= nR; ++j)
    for (int k = 0; k <= nr; ++k) ph(j, k) = std::exp(-ci * ((j + k + 1.0) * wt * t)) * c(j, k);
  Eigen::MatrixXd fR(grid_R.size(), nR + 1), fr(grid_r.size(), nr + 1);
  for (int i = 0; i < grid_R.size(); ++i) fR.row(i) = traj.basis_R.eigenfunctions_at(grid_R[i]);
  for (int i = 0; i < grid_r.size(); ++i) fr.row(i) = traj.basis_r.eigenfunctions_at(grid_r[i]);
  return fR.cast<cd>() * ph * fr.cast<cd>().transpose();
}

double measure_period_shift(const SameStateTrajectory& traj) {
  if (traj.schedule.tau_over_tosc() < 1.2)
    throw contract_error("period-shift measurement needs a run past the first recurrence");
  const int n = traj.basis.n_max;
  double w = traj.basis.frequency;
  // |O(t)| = |O_rel(t)| * |O_CM(t)|; the decoupled CM factor is analytic
  std::vector<double> abs_o(traj.times.size());
  for (size_t i = 0; i < traj.times.size(); ++i) {
    double t = traj.times[i];
    cd o_rel = 0.0;
    for (int k = 0; k <= n; ++k)
      o_rel += std::conj(traj.snapshots[i][k]) * std::exp(ci * ((k + 0.5) * w * t)) *
               traj.init[k];
    abs_o[i] = std::abs(o_rel) * std::sqrt(cm_overlap_sq(traj.params, t));
  }
  double dt = traj.times[1] - traj.times[0];
  size_t lo = static_cast<size_t>(std::floor(0.9 * t_osc / dt));
  size_t hi = static_cast<size_t>(std::ceil(1.1 * t_osc / dt));
  hi = std::min(hi, traj.times.size() - 2);
  size_t j = lo;
  for (size_t i = lo; i <= hi; ++i)
    if (abs_o[i] > abs_o[j]) j = i;
  double a = abs_o[j - 1], b = abs_o[j], c = abs_o[j + 1];
  double denom = a - 2.0 * b + c;
  if (denom >= 0) throw consistency_error("recurrence maximum is not a parabola peak");
  double t_peak = traj.times[j] + 0.5 * (a - c) / denom * dt;
  return t_peak / t_osc - 1.0;
}

}  // namespace collgate
