#include "collgate/analytic.hpp"

#include <cmath>

namespace collgate {

namespace {
constexpr double mu = 0.5;  // relative reduced mass
constexpr double big_m = 2.0;

// shared time-dependent phase offset of the breathing Gaussians
double theta(const TrapParams& p, double t) {
  double w = p.omega, w0 = p.omega0;
  double c = std::cos(w * t), s = std::sin(w * t);
  return -w * t / 2.0 -
         0.5 * std::atan((w0 - w) * c * s / (w * c * c + w0 * s * s));
}
}  // namespace

double breathing_width(const TrapParams& p, double t) {
  double w = p.omega, w0 = p.omega0;
  double c = std::cos(w * t), s = std::sin(w * t);
  return w * w * w0 / (w * w * c * c + w0 * w0 * s * s);
}

double cm_phase(const TrapParams& p, double R, double t) {
  double w = p.omega, w0 = p.omega0;
  double om = breathing_width(p, t);
  double c = std::cos(w * t), s = std::sin(w * t);
  return big_m * om / 2.0 * (w0 * w0 - w * w) / (w0 * w) * R * R * c * s + theta(p, t);
}

std::complex<double> cm_wavefunction(const TrapParams& p, double R, double t) {
  double om = breathing_width(p, t);
  double pref = std::pow(big_m * om / pi, 0.25);
  return pref * std::exp(std::complex<double>(-big_m * om / 2.0 * R * R, cm_phase(p, R, t)));
}

double cm_overlap_sq(const TrapParams& p, double t) {
  double w = p.omega, w0 = p.omega0;
  double s = std::sin(w * t);
  double d2 = w0 * w0 - w * w;
  return 1.0 / std::sqrt(1.0 + d2 * d2 / (4.0 * w0 * w0 * w * w) * s * s);
}

std::complex<double> cm_overlap(const TrapParams& p, double t) {
  double w = p.omega, w0 = p.omega0;
  double om = breathing_width(p, t);
  double c = std::cos(w * t), s = std::sin(w * t);
  double q = big_m * om / 2.0 * (w0 * w0 - w * w) / (w0 * w) * c * s;
  double a = big_m * (om + w0) / 2.0;
  double pref = std::pow(big_m * om / pi, 0.25) * std::pow(big_m * w0 / pi, 0.25);
  std::complex<double> z(a, q);  // conj(psi(t)) psi(0) carries e^{-i q R^2}
  return pref * std::exp(std::complex<double>(0.0, -theta(p, t))) * std::sqrt(pi / z);
}

double rel_phase(const TrapParams& p, double r, double t) {
  double w = p.omega, w0 = p.omega0;
  double om = breathing_width(p, t);
  double c = std::cos(w * t), s = std::sin(w * t);
  return theta(p, t) +
         2.0 * mu * om / (w * w0) * s *
             (((w0 * w0 - w * w) / 4.0 * r * r + w0 * w0 * p.x0 * p.x0) * c +
              w0 * w0 * p.x0 * r);
}

std::complex<double> rel_wavefunction_free(const TrapParams& p, double r, double t) {
  double om = breathing_width(p, t);
  double c = std::cos(p.omega * t);
  double pref = std::pow(mu * om / (4.0 * pi), 0.25);
  double lp = r + 2.0 * p.x0 * c, lm = r - 2.0 * p.x0 * c;
  return pref * (std::exp(std::complex<double>(-mu * om / 2.0 * lp * lp, rel_phase(p, r, t))) +
                 std::exp(std::complex<double>(-mu * om / 2.0 * lm * lm, rel_phase(p, -r, t))));
}

double rel_overlap_free_sq(const TrapParams& p, double t) {
  // modulus squared of the four-lobe Gaussian overlap below; the chirped
  // phases enter the modulus, so there is no simpler independent closed form
  return std::norm(rel_overlap_free(p, t));
}

std::complex<double> rel_overlap_free(const TrapParams& p, double t) {
  double w = p.omega, w0 = p.omega0, x0 = p.x0;
  double om = breathing_width(p, t);
  double c = std::cos(w * t), s = std::sin(w * t);
  double chirp = 2.0 * mu * om / (w * w0) * s;
  double al = chirp * c * (w0 * w0 - w * w) / 4.0;  // quadratic phase coefficient
  double be = chirp * w0 * w0 * x0;                 // linear
  double ga = chirp * c * w0 * w0 * x0 * x0 + theta(p, t);
  double a = mu * om / 2.0, b = mu * w0 / 2.0;
  double q = 2.0 * x0 * c, bb = 2.0 * x0;
  double pref = std::pow(mu * om / (4.0 * pi), 0.25) * std::pow(mu * w0 / (4.0 * pi), 0.25);
  std::complex<double> z(a + b, al);
  std::complex<double> tot = 0.0;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      std::complex<double> l(2.0 * a * s1 * q + 2.0 * b * s2 * bb, s1 * be);
      tot += std::sqrt(pi / z) * std::exp(l * l / (4.0 * z) - a * q * q - b * bb * bb);
    }
  return pref * std::exp(std::complex<double>(0.0, -ga)) * tot;
}

}  // namespace collgate
