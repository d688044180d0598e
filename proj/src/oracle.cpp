#include "collgate/oracle.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <mutex>

#include "collgate/basis.hpp"
#include "collgate/errors.hpp"

namespace collgate {

using cd = std::complex<double>;

namespace {

constexpr cd ci(0.0, 1.0);

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

// RAII wrapper: FFTW plan creation/destruction is not thread safe
struct Fft1D {
  fftw_plan fwd, bwd;
  int n;
  explicit Fft1D(Eigen::VectorXcd& buf) : n(static_cast<int>(buf.size())) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fwd = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft1D() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
};

struct Fft2D {
  fftw_plan fwd, bwd;
  int n;
  explicit Fft2D(Eigen::MatrixXcd& buf) : n(static_cast<int>(buf.rows())) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fwd = fftw_plan_dft_2d(n, n, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_2d(n, n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft2D() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
};

Eigen::VectorXd wavenumbers(int n, double dx) {
  Eigen::VectorXd k(n);
  double dk = 2.0 * pi / (n * dx);
  for (int i = 0; i < n; ++i) k[i] = (i <= n / 2 - 1) ? i * dk : (i - n) * dk;
  return k;
}

double regularized_delta(double r, double sigma) {
  return std::exp(-r * r / (2.0 * sigma * sigma)) / (sigma * std::sqrt(2.0 * pi));
}

void check_grid(double sigma, double dx, double dt, double k_occ, double mass) {
  if (sigma < 2.0 * dx)
    throw contract_error("regularization width below twice the grid spacing");
  if (dt * k_occ * k_occ / (2.0 * mass) >= 0.1)
    throw contract_error("time step cannot resolve the occupied kinetic phases");
}

void check_state(double norm_sq, double edge, double boundary_tol, double norm_tol,
                 double t) {
  if (edge > boundary_tol)
    throw solver_error("wavefunction reached the domain edge at t/T_osc = " +
                       std::to_string(t / t_osc) + "; enlarge the domain");
  if (std::abs(norm_sq - 1.0) > norm_tol * std::max(1.0, t / t_osc))
    throw solver_error("grid norm drift at t/T_osc = " + std::to_string(t / t_osc));
}

}  // namespace

Eigen::VectorXd GridState1D::grid() const {
  Eigen::VectorXd x(n_points);
  for (int i = 0; i < n_points; ++i) x[i] = -half_width + i * dx();
  return x;
}

double GridState1D::boundary_amplitude() const {
  return std::max(std::abs(psi[0]), std::abs(psi[n_points - 1]));
}

Eigen::VectorXd GridState2D::grid() const {
  Eigen::VectorXd x(n_points);
  for (int i = 0; i < n_points; ++i) x[i] = -half_width + i * dx();
  return x;
}

double GridState2D::boundary_amplitude() const {
  double m = 0.0;
  for (int i = 0; i < n_points; ++i) {
    m = std::max(m, std::abs(psi(0, i)));
    m = std::max(m, std::abs(psi(n_points - 1, i)));
    m = std::max(m, std::abs(psi(i, 0)));
    m = std::max(m, std::abs(psi(i, n_points - 1)));
  }
  return m;
}

GridState1D make_initial_bb(const TrapParams& p, double half_width, int n_points,
                            double sigma, int excitation) {
  GridState1D s;
  s.half_width = (half_width > 0) ? half_width : 2.0 * p.x0 + 14.0;
  s.n_points = n_points;
  s.sigma = (sigma > 0) ? sigma : 1.0 / 20.0;
  s.psi.resize(n_points);
  Eigen::VectorXd x = s.grid();
  for (int i = 0; i < n_points; ++i) s.psi[i] = excited_relative_value(p, excitation, x[i]);
  s.psi /= std::sqrt(s.norm_sq());
  return s;
}

GridState2D make_initial_ab(const TrapParams& p, double half_width, int n_points,
                            double sigma) {
  GridState2D s;
  s.half_width = (half_width > 0) ? half_width : p.x0 + 11.0;
  s.n_points = n_points;
  s.sigma = (sigma > 0) ? sigma : 1.0 / 20.0;
  s.psi.resize(n_points, n_points);
  Eigen::VectorXd x = s.grid();
  double w0 = p.omega0;
  for (int i = 0; i < n_points; ++i)
    for (int j = 0; j < n_points; ++j) {
      double x1 = x[i], x2 = x[j];
      s.psi(i, j) = std::sqrt(w0 / pi) *
                    std::exp(-w0 * (x1 + p.x0) * (x1 + p.x0) / 2.0 -
                             w0 * (x2 - p.x0) * (x2 - p.x0) / 2.0);
    }
  s.psi /= std::sqrt(s.norm_sq());
  return s;
}

GridTrajectory1D grid_propagate_bb(const GridState1D& init, const TrapParams& p,
                                   double t_end, const GridSettings& o) {
  double mu = 0.5;
  double dt = (o.dt > 0) ? o.dt : t_osc / 8192.0;
  double dx = init.dx();
  double g = 2.0 * p.a_bb * p.omega_perp;
  double k_occ = mu * 2.0 * p.x0 * p.omega + 6.0 * std::sqrt(mu * p.omega0);
  check_grid(init.sigma, dx, dt, k_occ, mu);

  int n = init.n_points;
  Eigen::VectorXd x = init.grid();
  Eigen::VectorXd k = wavenumbers(n, dx);
  Eigen::VectorXcd kin(n), vh_int(n), vh_free(n);
  for (int i = 0; i < n; ++i) {
    kin[i] = std::exp(-ci * (dt * k[i] * k[i] / (2.0 * mu))) / double(n);
    double v0 = 0.5 * mu * p.omega * p.omega * x[i] * x[i];
    vh_free[i] = std::exp(-ci * (0.5 * dt * v0));
    vh_int[i] = std::exp(-ci * (0.5 * dt * (v0 + g * regularized_delta(x[i], init.sigma))));
  }

  GridTrajectory1D traj;
  Eigen::VectorXcd a = init.psi, b = init.psi;
  Fft1D fa(a), fb(b);
  int n_steps = static_cast<int>(std::lround(t_end / dt));
  auto record = [&](int step) {
    double t = step * dt;
    traj.times.push_back(t);
    traj.o0.push_back(a.dot(b) * dx);  // conj(interacting) . free
    traj.o_init.push_back(a.dot(init.psi) * dx);
    double edge = std::max(std::abs(a[0]), std::abs(a[n - 1]));
    check_state(a.squaredNorm() * dx, edge, o.boundary_tol, o.norm_tol, t);
  };
  record(0);
  for (int s = 0; s < n_steps; ++s) {
    a = vh_int.cwiseProduct(a);
    fftw_execute(fa.fwd);
    a = kin.cwiseProduct(a);
    fftw_execute(fa.bwd);
    a = vh_int.cwiseProduct(a);
    b = vh_free.cwiseProduct(b);
    fftw_execute(fb.fwd);
    b = kin.cwiseProduct(b);
    fftw_execute(fb.bwd);
    b = vh_free.cwiseProduct(b);
    if ((s + 1) % o.store_every == 0 || s + 1 == n_steps) record(s + 1);
  }
  traj.final_state = init;
  traj.final_state.psi = a;
  traj.final_free_state = init;
  traj.final_free_state.psi = b;
  return traj;
}

GridTrajectory2D grid_propagate_ab(const GridState2D& init, const TrapParams& p,
                                   double t_end, const GridSettings& o) {
  double dt = (o.dt > 0) ? o.dt : t_osc / 8192.0;
  double dx = init.dx();
  double g = 2.0 * p.a_ab * p.omega_perp;
  double k_occ = p.x0 * p.omega + 6.0 * std::sqrt(p.omega0);
  check_grid(init.sigma, dx, dt, k_occ, 1.0);

  int n = init.n_points;
  Eigen::VectorXd x = init.grid();
  Eigen::VectorXd k = wavenumbers(n, dx);
  Eigen::MatrixXcd kin(n, n), vh_int(n, n), vh_free(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      kin(i, j) = std::exp(-ci * (dt * (k[i] * k[i] + k[j] * k[j]) / 2.0)) / double(n * n);
      double x1 = x[i], x2 = x[j];
      double v0 = 0.5 * p.omega0 * p.omega0 * (x1 + p.x0) * (x1 + p.x0) +
                  0.5 * p.omega * p.omega * x2 * x2;
      vh_free(i, j) = std::exp(-ci * (0.5 * dt * v0));
      vh_int(i, j) =
          std::exp(-ci * (0.5 * dt * (v0 + g * regularized_delta(x2 - x1, init.sigma))));
    }

  GridTrajectory2D traj;
  Eigen::MatrixXcd a = init.psi, b = init.psi;
  Fft2D fa(a), fb(b);
  int n_steps = static_cast<int>(std::lround(t_end / dt));
  auto record = [&](int step) {
    double t = step * dt;
    traj.times.push_back(t);
    traj.o0.push_back((a.conjugate().cwiseProduct(b)).sum() * dx * dx);
    traj.o_init.push_back((a.conjugate().cwiseProduct(init.psi)).sum() * dx * dx);
    GridState2D tmp = init;
    tmp.psi = a;
    check_state(a.squaredNorm() * dx * dx, tmp.boundary_amplitude(), o.boundary_tol,
                o.norm_tol, t);
  };
  record(0);
  for (int s = 0; s < n_steps; ++s) {
    a = vh_int.cwiseProduct(a);
    fftw_execute(fa.fwd);
    a = kin.cwiseProduct(a);
    fftw_execute(fa.bwd);
    a = vh_int.cwiseProduct(a);
    b = vh_free.cwiseProduct(b);
    fftw_execute(fb.fwd);
    b = kin.cwiseProduct(b);
    fftw_execute(fb.bwd);
    b = vh_free.cwiseProduct(b);
    if ((s + 1) % o.store_every == 0 || s + 1 == n_steps) record(s + 1);
  }
  traj.final_state = init;
  traj.final_state.psi = a;
  traj.final_free_state = init;
  traj.final_free_state.psi = b;
  return traj;
}

GridState1D grid_propagate_harmonic(const GridState1D& init, double mass, double freq,
                                    double t_end, const GridSettings& o) {
  double dt = (o.dt > 0) ? o.dt : t_osc / 8192.0;
  double dx = init.dx();
  int n = init.n_points;
  Eigen::VectorXd x = init.grid();
  Eigen::VectorXd k = wavenumbers(n, dx);
  Eigen::VectorXcd kin(n), vh(n);
  for (int i = 0; i < n; ++i) {
    kin[i] = std::exp(-ci * (dt * k[i] * k[i] / (2.0 * mass))) / double(n);
    vh[i] = std::exp(-ci * (0.5 * dt * 0.5 * mass * freq * freq * x[i] * x[i]));
  }
  GridState1D out = init;
  Fft1D f(out.psi);
  int n_steps = static_cast<int>(std::lround(t_end / dt));
  for (int s = 0; s < n_steps; ++s) {
    out.psi = vh.cwiseProduct(out.psi);
    fftw_execute(f.fwd);
    out.psi = kin.cwiseProduct(out.psi);
    fftw_execute(f.bwd);
    out.psi = vh.cwiseProduct(out.psi);
  }
  return out;
}

RegularizationStudy delta_regularization_study(
    const std::vector<double>& sigmas, const std::function<double(double)>& observable) {
  if (sigmas.size() < 3)
    throw contract_error("extrapolation needs at least three regularization widths");
  RegularizationStudy st;
  st.sigmas = sigmas;
  for (double s : sigmas) st.values.push_back(observable(s));
  size_t n = st.values.size();
  double d1 = st.values[n - 2] - st.values[n - 3];
  double d2 = st.values[n - 1] - st.values[n - 2];
  for (size_t i = 2; i < n; ++i) {
    double a = st.values[i - 1] - st.values[i - 2];
    double b = st.values[i] - st.values[i - 1];
    if (a * b < 0) st.monotone = false;
  }
  if (!st.monotone || d2 == d1) {
    st.extrapolated = st.values.back();
    st.error_estimate = std::abs(d2);
    return st;
  }
  st.extrapolated = st.values.back() - d2 * d2 / (d2 - d1);
  st.error_estimate = std::abs(st.extrapolated - st.values.back());
  return st;
}

void dump_density_frames(const std::string& path, int nx, int ny, double dx, double dt,
                         const std::vector<Eigen::MatrixXd>& frames) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw contract_error("cannot open dump file: " + path);
  char header[256];
  std::snprintf(header, sizeof(header),
                "{\"nx\": %d, \"ny\": %d, \"dx\": %.15g, \"dt\": %.15g, \"frames\": %zu}\n",
                nx, ny, dx, dt, frames.size());
  std::fwrite(header, 1, std::strlen(header), f);
  for (const auto& fr : frames) {
    // row-major: iterate rows then columns
    for (int i = 0; i < fr.rows(); ++i)
      for (int j = 0; j < fr.cols(); ++j) {
        double v = fr(i, j);
        std::fwrite(&v, sizeof(double), 1, f);
      }
  }
  std::fclose(f);
}

}  // namespace collgate
