#pragma once
#include <array>
#include <vector>

#include "collgate/model.hpp"

namespace collgate {

struct GatePhases {
  double phi_a = 0;
  double phi_b = 0;
  double phi_ab = 0;  // zero under the displaced-transverse-trap assumption
  double phi_bb = 0;
};

struct GateUnitary {
  std::array<double, 4> diag_phases;  // Phi_aa, Phi_ab, Phi_ba, Phi_bb
  double chi = 0;                     // Phi_aa + Phi_bb - Phi_ab - Phi_ba
  double residue = 0;                 // |chi - pi| mod 2 pi, gate-quality measure
};

GateUnitary gate_unitary(const GatePhases& g);

// worst case over input product states of the gate overlap, minimized exactly
// over the probability simplex; A, B, C are overlap-root moduli
double fidelity_full(double a, double b, double c, double phi_bb);

// simplification valid at tau = N T_osc: F = (1 - |O0| cos phi_bb) / 2
double fidelity_simple(double o0_abs, double phi_bb);

// P_n = (1 - gamma) gamma^n renormalized over n = 0..n_cut,
// gamma = exp(-1/T) with T in units of hbar omega0 / k_B
std::vector<double> thermal_weights(double temperature, int n_cut);

struct ExcitedChannel {
  double o0_abs = 0;   // |O0(psi_(n), tau)|
  double phi = 0;      // collisional phase of the n-th channel
};

// thermal fidelity: full sum over channels and the telescoped gamma expansion
struct ThermalFidelity {
  double full = 0;
  double expansion = 0;
  double gamma = 0;
};

ThermalFidelity fidelity_thermal(const std::vector<ExcitedChannel>& per_n,
                                 double temperature);

struct FidelityRow {
  double kt_over_hw0 = 0;
  double gamma = 0;
  double f_full = 0;
  double f_expansion = 0;
};

struct FidelityReport {
  double a = 0, b = 0, c = 0;  // overlap-root moduli
  double phi_bb = 0;
  double f0 = 0;
  std::vector<ExcitedChannel> per_n;
  std::vector<FidelityRow> table;
};

}  // namespace collgate
