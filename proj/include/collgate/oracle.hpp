#pragma once
#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "collgate/model.hpp"

namespace collgate {

// 1D split-operator state in the relative coordinate
struct GridState1D {
  double half_width = 0;  // domain is [-half_width, half_width)
  int n_points = 0;
  double sigma = 0;  // Gaussian width standing in for the contact delta
  Eigen::VectorXcd psi;

  double dx() const { return 2.0 * half_width / n_points; }
  Eigen::VectorXd grid() const;
  double norm_sq() const { return psi.squaredNorm() * dx(); }
  double boundary_amplitude() const;
};

struct GridState2D {
  double half_width = 0;
  int n_points = 0;  // per coordinate
  double sigma = 0;
  Eigen::MatrixXcd psi;  // psi(x1, x2), row index = x1

  double dx() const { return 2.0 * half_width / n_points; }
  Eigen::VectorXd grid() const;
  double norm_sq() const { return psi.squaredNorm() * dx() * dx(); }
  double boundary_amplitude() const;
};

struct GridSettings {
  double dt = 0;                 // 0 = auto (t_osc / 8192)
  int store_every = 16;          // snapshots kept every this many steps
  // amplitude cap at the domain edge; the contact term scatters a tiny
  // outgoing wave (~1e-8 in amplitude) that no finite box can contain
  double boundary_tol = 1e-6;
  double norm_tol = 1e-8;
};

GridState1D make_initial_bb(const TrapParams& p, double half_width = 0, int n_points = 2048,
                            double sigma = 0 /* 0 = a_x / 20 */, int excitation = 0);
GridState2D make_initial_ab(const TrapParams& p, double half_width = 0, int n_points = 512,
                            double sigma = 0);

struct GridTrajectory1D {
  std::vector<double> times;
  std::vector<std::complex<double>> o0;      // overlap vs a_s = 0 twin run
  std::vector<std::complex<double>> o_init;  // overlap vs t = 0 state
  GridState1D final_state;
  GridState1D final_free_state;
};

struct GridTrajectory2D {
  std::vector<double> times;
  std::vector<std::complex<double>> o0;
  std::vector<std::complex<double>> o_init;
  GridState2D final_state;
  GridState2D final_free_state;
};

// Strang-split propagation of the relative-coordinate bb problem together
// with its a_s = 0 twin (same grid, shared kinetic factors)
GridTrajectory1D grid_propagate_bb(const GridState1D& init, const TrapParams& p,
                                   double t_end, const GridSettings& o = {});

// 2D (x1, x2) propagation of the ab problem with its a_s = 0 twin
GridTrajectory2D grid_propagate_ab(const GridState2D& init, const TrapParams& p,
                                   double t_end, const GridSettings& o = {});

// generic single-well propagation for recurrence sanity checks
GridState1D grid_propagate_harmonic(const GridState1D& init, double mass, double freq,
                                    double t_end, const GridSettings& o = {});

struct RegularizationStudy {
  std::vector<double> sigmas;
  std::vector<double> values;      // observable at each sigma
  double extrapolated = 0;         // Richardson limit sigma -> 0
  double error_estimate = 0;
  bool monotone = true;
};

// evaluates the observable (e.g. collisional phase) at each sigma and
// extrapolates quadratically in sigma^2 to zero
RegularizationStudy delta_regularization_study(
    const std::vector<double>& sigmas, const std::function<double(double)>& observable);

// |psi|^2 frame dump: one-line JSON preamble {nx, ny, dx, dt, frames}
// followed by row-major little-endian doubles
void dump_density_frames(const std::string& path, int nx, int ny, double dx, double dt,
                         const std::vector<Eigen::MatrixXd>& frames);

}  // namespace collgate
