#pragma once
#include <array>
#include <string>
#include <vector>

namespace collgate {

inline constexpr double mu0_si = 1.25663706212e-6;  // N/A^2
inline constexpr double mu_bohr_si = 9.2740100783e-24;  // J/T

// sinusoidally magnetized mirror surface with bias fields
struct MirrorParams {
  double m0 = 0;       // magnetization amplitude, A/m
  double k_m = 0;      // magnetization wavenumber, rad/m
  double delta = 0;    // tape thickness, m
  double b_ext_y = 0;  // bias fields, T
  double b_ext_z = 0;
  double g_f = 0.5;
  double m_f = 2.0;

  double b0() const;  // mu0 m0 (1 - e^{-k delta}) / 2
  void check() const;
};

// B = (B0 e^{-kz} cos kx + 0, B_y, B0 e^{-kz} sin kx + B_z); axes: x along the
// magnetization period, z the height above the surface, y in-plane transverse
std::array<double, 3> magnetic_field(const MirrorParams& mp, double x, double z);

// V = g_F mu_B m_F |B|; throws with the location when |B| vanishes to
// rounding accuracy (spin-flip hazard)
double magnetic_potential(const MirrorParams& mp, double x, double z);

double trap_height(const MirrorParams& mp);  // z0 = ln(mu0 m0 / B0) / k

struct TrapMinimum {
  double x = 0, z = 0;     // m
  double potential = 0;    // J
  double omega_x = 0;      // rad/s
  double omega_z = 0;
};

// damped Newton refinement from grid-scan seeds over one period in x
std::vector<TrapMinimum> find_minima(const MirrorParams& mp, double mass_kg);

// curvature eigenvalues at a verified minimum -> angular frequencies;
// Richardson-refined numeric Hessian; throws on saddle points
std::array<double, 2> local_frequencies(const MirrorParams& mp, double x, double z,
                                        double mass_kg);

// CSV field map `x_m, z_m, V_joule, Bx_T, By_T, Bz_T`
void write_field_map(const std::string& path, const MirrorParams& mp,
                     double x_min, double x_max, int nx,
                     double z_min, double z_max, int nz);

}  // namespace collgate
