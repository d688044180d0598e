#pragma once
#include <string>
#include <vector>

#include "collgate/basis.hpp"

namespace collgate {

struct SolverSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int samples_per_period = 512;
  // norm drift thresholds, per elapsed T_osc
  double norm_drift_warn = 1e-8;
  double norm_drift_error = 1e-6;
  // truncation-tail probability thresholds (contact interactions have slowly
  // decaying oscillator tails; see README on convergence)
  double tail_warn = 1e-6;
  double tail_error = 1e-2;
};

struct SameStateTrajectory {
  TrapParams params;
  GateSchedule schedule;
  OscillatorBasis basis;
  double coupling = 0;        // g actually applied
  Eigen::VectorXcd init;      // amplitudes at t = 0
  std::vector<double> times;  // internal units, uniform, times[0] = 0
  std::vector<Eigen::VectorXcd> snapshots;
  std::vector<double> norms;
  std::vector<std::string> flags;

  int sample_count() const { return static_cast<int>(times.size()); }
  int index_at(double t) const;  // nearest sample; throws std::out_of_range beyond tau
};

struct DiffStateTrajectory {
  TrapParams params;
  GateSchedule schedule;
  OscillatorBasis basis_R;
  OscillatorBasis basis_r;
  double coupling = 0;
  Eigen::MatrixXcd init;
  std::vector<double> times;
  std::vector<Eigen::MatrixXcd> snapshots;
  std::vector<double> norms;
  std::vector<std::string> flags;

  int sample_count() const { return static_cast<int>(times.size()); }
  int index_at(double t) const;
};

SameStateTrajectory propagate_same(const ModeCoefficients& init, const TrapParams& p,
                                   const GateSchedule& s, const SolverSettings& o = {});

DiffStateTrajectory propagate_diff(const PairCoefficients& init, const TrapParams& p,
                                   const GateSchedule& s, const SolverSettings& o = {});

// re-attach interaction-picture phases and evaluate on a position grid;
// throws contract_error when the grid cannot resolve the highest basis mode
Eigen::VectorXcd reconstruct_wavefunction(const ModeCoefficients& state, double t,
                                          const Eigen::VectorXd& grid);
Eigen::VectorXcd reconstruct_wavefunction(const SameStateTrajectory& traj, int sample,
                                          const Eigen::VectorXd& grid);
Eigen::MatrixXcd reconstruct_wavefunction(const DiffStateTrajectory& traj, int sample,
                                          const Eigen::VectorXd& grid_R,
                                          const Eigen::VectorXd& grid_r);

// oscillation-period increase: quadratic interpolation of the first recurrence
// maximum of |O(psi_bb, t)| near T_osc; returns delta_t / T_osc
double measure_period_shift(const SameStateTrajectory& traj);

}  // namespace collgate
