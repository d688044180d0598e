#pragma once
#include <complex>
#include <vector>

#include "collgate/dynamics.hpp"

namespace collgate {

// O(psi, t) = <psi(t)|psi(0)>; interaction-picture phases re-attached
std::complex<double> overlap_with_initial(const SameStateTrajectory& traj, int sample);
std::complex<double> overlap_with_initial(const DiffStateTrajectory& traj, int sample);

// O0(t) = <psi(t)|psi0(t)> against the g = 0 evolution of the same initial
// state; in the interaction picture the same-state free coefficients are
// constant, so no companion trajectory is needed there
std::complex<double> overlap_with_free(const SameStateTrajectory& traj, int sample);
std::complex<double> overlap_with_free(const DiffStateTrajectory& traj,
                                       const DiffStateTrajectory& free_traj, int sample);

struct OverlapSeries {
  std::vector<double> t_over_tosc;
  std::vector<std::complex<double>> o0;      // <psi(t)|psi0(t)>
  std::vector<std::complex<double>> o_init;  // <psi(t)|psi(0)>
  std::vector<double> norms;
  std::vector<double> phase_coll;            // unwrapped arg O0, zero at t = 0
  std::vector<std::string> flags;
};

OverlapSeries overlap_series(const SameStateTrajectory& traj);
OverlapSeries overlap_series(const DiffStateTrajectory& traj,
                             const DiffStateTrajectory& free_traj);

// nearest-continuation unwrap starting from wrapped[0]
std::vector<double> unwrap_phases(const std::vector<double>& wrapped);

double collisional_phase(const OverlapSeries& s);  // value at the last sample

// first-order interaction energy of the colliding two-lobe state, units of
// hbar omega, from the analytic breathing evolution
double energy_shift_bb(const TrapParams& p, double t);

// saddle-point per-period phase 4 a_bb w_perp / sqrt(x0^2 w^2 - a0^2 w0^2 / 4)
double perturbative_phase_period(const TrapParams& p);

// per-period phase of the n-th excited two-lobe state by time quadrature of
// <psi0_(n)(t)| u_bb |psi0_(n)(t)>
double perturbative_phase_excited(const TrapParams& p, int n);

// single-collision phase 2 a_bb w_perp / v; per period twice that at v = x0 w
double constant_velocity_phase(const TrapParams& p, double v);

// closed forms, valid only at tau = N T_osc (throws contract_error otherwise)
double kinematic_phase_a(const TrapParams& p, const GateSchedule& s);
double kinematic_phase_b(const TrapParams& p, const GateSchedule& s);

struct PhaseRecord {
  StatePair pair = StatePair::bb;
  double t = 0;
  double o_abs = 0;
  double o0_abs = 0;
  double phi_coll = 0;
  double phi_kin_a = 0;   // per-atom kinematic phases of the channel
  double phi_kin_b = 0;
  double phi_total = 0;   // phi_coll + phi_kin_a + phi_kin_b
  double arg_o_tau = 0;   // arg <psi(tau)|psi(0)>, longitudinal part
  std::vector<std::string> flags;
};

// max energy shift over a period (units hbar omega), for the validity flag
double max_energy_shift_bb(const TrapParams& p);

PhaseRecord phase_record(const TrapParams& p, const GateSchedule& s, StatePair pair,
                         const OverlapSeries& series);

// residual of Phi - (phi_coll + kinematic sum) mod 2 pi, where the total phase
// Phi = arg O(tau) + 2 w_perp tau is measured independently of the closed
// forms; meaningful when the motional state is restored, |O(tau)| > 0.95
double phase_decomposition_residual(const TrapParams& p, const GateSchedule& s,
                                    const PhaseRecord& r);

}  // namespace collgate
