#pragma once
#include <complex>

#include "collgate/model.hpp"

namespace collgate {

// breathing width of a ground-state Gaussian released from the omega0 well
// into the omega well: Omega(t) = omega^2 omega0 / (omega^2 cos^2 + omega0^2 sin^2)
double breathing_width(const TrapParams& p, double t);

// center-of-mass packet (mass M = 2m), Gaussian at R = 0 breathing in the merged well
std::complex<double> cm_wavefunction(const TrapParams& p, double R, double t);
double cm_overlap_sq(const TrapParams& p, double t);
std::complex<double> cm_overlap(const TrapParams& p, double t);  // <psi_CM(t)|psi_CM(0)>

// noninteracting relative packet: two counter-oscillating lobes at +-2 x0 cos(omega t)
std::complex<double> rel_wavefunction_free(const TrapParams& p, double r, double t);
double rel_overlap_free_sq(const TrapParams& p, double t);
std::complex<double> rel_overlap_free(const TrapParams& p, double t);  // <psi(t)|psi(0)>

// quadratic/linear/constant pieces of the lobe phases (exposed for tests)
double cm_phase(const TrapParams& p, double R, double t);
double rel_phase(const TrapParams& p, double r, double t);

}  // namespace collgate
