#include "collgate/trapfield.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "collgate/errors.hpp"
#include "collgate/model.hpp"

namespace collgate {

double MirrorParams::b0() const { return mu0_si * m0 * (1.0 - std::exp(-k_m * delta)) / 2.0; }

void MirrorParams::check() const {
  if (m0 <= 0 || k_m <= 0 || delta <= 0)
    throw contract_error("magnetization, wavenumber and thickness must be positive");
  if (g_f * m_f <= 0) throw contract_error("g_F m_F must be positive to trap low-field seekers");
}

std::array<double, 3> magnetic_field(const MirrorParams& mp, double x, double z) {
  if (z <= 0) throw contract_error("field is defined above the mirror surface only");
  double decay = mp.b0() * std::exp(-mp.k_m * z);
  return {decay * std::cos(mp.k_m * x), mp.b_ext_y, decay * std::sin(mp.k_m * x) + mp.b_ext_z};
}

double magnetic_potential(const MirrorParams& mp, double x, double z) {
  auto b = magnetic_field(mp, x, z);
  double mag = std::sqrt(b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
  // a field this far below the surface scale is a zero up to rounding; atoms
  // crossing it undergo Majorana spin flips, so the potential is meaningless
  if (mag <= 1e-9 * mp.b0()) {
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "field zero at x = %.6g m, z = %.6g m: spin-flip hazard; add a bias field",
                  x, z);
    throw solver_error(msg);
  }
  return mp.g_f * mu_bohr_si * mp.m_f * mag;
}

double trap_height(const MirrorParams& mp) {
  mp.check();
  double ratio = mu0_si * mp.m0 / mp.b0();  // = 2 / (1 - e^{-k delta}) > 1 always
  return std::log(ratio) / mp.k_m;
}

namespace {

// Richardson-refined central second derivatives of V at (x, z)
std::array<double, 3> hessian(const MirrorParams& mp, double x, double z) {
  auto v = [&](double a, double b) { return magnetic_potential(mp, a, b); };
  double h0 = 0.02 / mp.k_m;
  auto second = [&](int dir_x, int dir_z, double h) {
    if (dir_x && dir_z) {
      return (v(x + h, z + h) - v(x + h, z - h) - v(x - h, z + h) + v(x - h, z - h)) /
             (4.0 * h * h);
    }
    double dx = dir_x ? h : 0.0, dz = dir_z ? h : 0.0;
    return (v(x + dx, z + dz) - 2.0 * v(x, z) + v(x - dx, z - dz)) / (h * h);
  };
  std::array<double, 3> out{};
  int dirs[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  for (int i = 0; i < 3; ++i) {
    double prev = 0.0;
    for (int it = 0; it < 12; ++it) {
      double h = h0 / std::pow(2.0, it);
      double coarse = second(dirs[i][0], dirs[i][1], h);
      double fine = second(dirs[i][0], dirs[i][1], h / 2.0);
      double rich = (4.0 * fine - coarse) / 3.0;
      if (it > 0 && std::abs(rich - prev) <= 1e-4 * std::abs(rich)) {
        out[i] = rich;
        break;
      }
      prev = rich;
      out[i] = rich;
    }
  }
  return out;
}

std::array<double, 2> gradient(const MirrorParams& mp, double x, double z, double h) {
  auto v = [&](double a, double b) { return magnetic_potential(mp, a, b); };
  return {(v(x + h, z) - v(x - h, z)) / (2.0 * h), (v(x, z + h) - v(x, z - h)) / (2.0 * h)};
}

}  // namespace

std::array<double, 2> local_frequencies(const MirrorParams& mp, double x, double z,
                                        double mass_kg) {
  if (mass_kg <= 0) throw contract_error("atom mass must be positive");
  double h = 1e-3 / mp.k_m;
  auto gr = gradient(mp, x, z, h);
  double scale = mp.g_f * mu_bohr_si * mp.m_f * mp.b0() * mp.k_m;  // natural force scale
  if (std::hypot(gr[0], gr[1]) > 1e-4 * scale)
    throw contract_error("input point is not a stationary point of the potential");
  auto hs = hessian(mp, x, z);
  // eigenvalues of [[vxx, vxz], [vxz, vzz]]
  double tr = hs[0] + hs[1], det = hs[0] * hs[1] - hs[2] * hs[2];
  double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  double l1 = tr / 2.0 - disc, l2 = tr / 2.0 + disc;
  if (l1 <= 0)
    throw solver_error("stationary point has non-positive curvature: not a trap");
  return {std::sqrt(l1 / mass_kg), std::sqrt(l2 / mass_kg)};
}

std::vector<TrapMinimum> find_minima(const MirrorParams& mp, double mass_kg) {
  mp.check();
  double period = 2.0 * pi / mp.k_m;
  double z0 = trap_height(mp);
  std::vector<TrapMinimum> out;
  int nx = 64, nz = 64;
  double z_lo = 0.2 * z0, z_hi = 5.0 * z0;
  // grid-scan seeds, then damped Newton on the gradient
  std::vector<std::array<double, 2>> seeds;
  for (int i = 0; i < nx; ++i)
    for (int j = 1; j < nz; ++j) {
      double x = period * i / nx;
      double z = z_lo + (z_hi - z_lo) * j / nz;
      double v = magnetic_potential(mp, x, z);
      bool is_min = true;
      double hx = period / nx, hz = (z_hi - z_lo) / nz;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1 && is_min; ++dj) {
          if (!di && !dj) continue;
          double zz = z + dj * hz;
          if (zz <= 0) continue;
          if (magnetic_potential(mp, x + di * hx, zz) < v) is_min = false;
        }
      if (is_min) seeds.push_back({x, z});
    }
  for (auto [x, z] : seeds) {
    double h = 1e-4 / mp.k_m;
    bool ok = true;
    for (int it = 0; it < 200; ++it) {
      auto gr = gradient(mp, x, z, h);
      auto hs = hessian(mp, x, z);
      double det = hs[0] * hs[1] - hs[2] * hs[2];
      if (std::abs(det) < 1e-300) {
        ok = false;
        break;
      }
      double sx = (hs[1] * gr[0] - hs[2] * gr[1]) / det;
      double sz = (hs[0] * gr[1] - hs[2] * gr[0]) / det;
      double damp = 1.0;
      while (z - damp * sz <= 0) damp /= 2.0;
      x -= damp * sx;
      z -= damp * sz;
      if (std::hypot(sx, sz) < 1e-12 / mp.k_m) break;
      if (it == 199) ok = false;
    }
    if (!ok) continue;
    // fold into the fundamental period and deduplicate
    x = std::fmod(x, period);
    if (x < 0) x += period;
    bool dup = false;
    for (const auto& m : out)
      if (std::abs(m.x - x) < 1e-6 * period && std::abs(m.z - z) < 1e-6 * z0) dup = true;
    if (dup) continue;
    TrapMinimum m;
    m.x = x;
    m.z = z;
    m.potential = magnetic_potential(mp, x, z);
    try {
      auto f = local_frequencies(mp, x, z, mass_kg);
      m.omega_x = f[0];
      m.omega_z = f[1];
    } catch (const std::exception&) {
      continue;  // refined to a saddle, not a trap
    }
    out.push_back(m);
  }
  return out;
}

void write_field_map(const std::string& path, const MirrorParams& mp,
                     double x_min, double x_max, int nx,
                     double z_min, double z_max, int nz) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw contract_error("cannot open field-map file: " + path);
  std::fprintf(f, "# collgate-csv-1 trapfield\n");
  std::fprintf(f, "x_m, z_m, V_joule, Bx_T, By_T, Bz_T\n");
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nz; ++j) {
      double x = x_min + (x_max - x_min) * (nx > 1 ? double(i) / (nx - 1) : 0.0);
      double z = z_min + (z_max - z_min) * (nz > 1 ? double(j) / (nz - 1) : 0.0);
      auto b = magnetic_field(mp, x, z);
      double v = magnetic_potential(mp, x, z);
      std::fprintf(f, "%.15g, %.15g, %.15g, %.15g, %.15g, %.15g\n", x, z, v, b[0], b[1], b[2]);
    }
  std::fclose(f);
}

}  // namespace collgate
