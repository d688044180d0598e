#include <cmath>
#include <complex>

#include "collgate/analytic.hpp"
#include "collgate/model.hpp"
#include "doctest.h"

using namespace collgate;
using cd = std::complex<double>;

namespace {

// plain trapezoid overlap of conj(psi(t)) psi(0) for the transcription checks
template <class Psi>
cd quadrature_overlap(Psi&& psi, double t, double half, int n) {
  double h = 2.0 * half / (n - 1);
  cd acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = -half + i * h;
    double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    acc += w * std::conj(psi(x, t)) * psi(x, 0.0);
  }
  return acc * h;
}

}  // namespace

TEST_SUITE("analytic") {
  TEST_CASE("breathing width oscillates between the two trap curvatures") {
    TrapParams p = preset("paper-fig2");
    CHECK(breathing_width(p, 0.0) == doctest::Approx(p.omega0).epsilon(1e-14));
    CHECK(breathing_width(p, t_osc / 4.0) ==
          doctest::Approx(p.omega * p.omega / p.omega0).epsilon(1e-12));
    CHECK(breathing_width(p, t_osc / 2.0) == doctest::Approx(p.omega0).epsilon(1e-12));
    for (double t : {0.13, 0.9, 2.7})
      CHECK(breathing_width(p, t) == doctest::Approx(breathing_width(p, t + t_osc / 2.0))
                                          .epsilon(1e-12));
  }

  TEST_CASE("center-of-mass overlap: modulus consistency and exact minimum") {
    TrapParams p = preset("paper-fig2");
    double min_sq = 1.0;
    for (int i = 0; i <= 200; ++i) {
      double t = t_osc * i / 200.0;
      double sq = cm_overlap_sq(p, t);
      CHECK(std::norm(cm_overlap(p, t)) == doctest::Approx(sq).epsilon(1e-12));
      min_sq = std::min(min_sq, sq);
    }
    // at omega0 = 2 omega the breathing minimum is exactly 4/5
    CHECK(min_sq == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(cm_overlap_sq(p, t_osc / 4.0) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(cm_overlap_sq(p, t_osc) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("free relative overlap: modulus consistency and full recurrence") {
    TrapParams p = preset("paper-fig2");
    for (int i = 0; i <= 60; ++i) {
      double t = t_osc * i / 60.0;
      CHECK(std::norm(rel_overlap_free(p, t)) ==
            doctest::Approx(rel_overlap_free_sq(p, t)).epsilon(1e-10).scale(1.0));
    }
    CHECK(std::abs(rel_overlap_free(p, t_osc)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(rel_overlap_free(p, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("wavefunctions stay normalized while breathing") {
    TrapParams p = preset("paper-fig2");
    for (double t : {0.0, 0.8, 2.9, 4.4}) {
      double h = 24.0 / 20000;
      double cm_norm = 0, rel_norm = 0;
      for (int i = -10000; i <= 10000; ++i) {
        cm_norm += std::norm(cm_wavefunction(p, i * h, t)) * h;
        rel_norm += std::norm(rel_wavefunction_free(p, i * h * 2.5, t)) * h * 2.5;
      }
      CHECK(cm_norm == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(rel_norm == doctest::Approx(1.0).epsilon(1e-8));
    }
  }

  TEST_CASE("closed-form overlaps equal direct quadrature of the wavefunctions") {
    TrapParams p = preset("paper-fig2");
    for (double t : {0.37, 1.21, 2.0, 3.93, 5.5}) {
      cd rel_q = quadrature_overlap(
          [&](double r, double tt) { return rel_wavefunction_free(p, r, tt); }, t, 30.0, 20001);
      cd rel_c = rel_overlap_free(p, t);
      CHECK(std::abs(rel_q - rel_c) < 1e-8);
      cd cm_q = quadrature_overlap(
          [&](double R, double tt) { return cm_wavefunction(p, R, tt); }, t, 12.0, 8001);
      cd cm_c = cm_overlap(p, t);
      CHECK(std::abs(cm_q - cm_c) < 1e-10);
    }
  }

  TEST_CASE("lobe centers follow 2 x0 cos(omega t)") {
    TrapParams p = preset("paper-fig2");
    // density maxima of the free relative packet sit at +-2 x0 cos(w t)
    for (double t : {0.3, 1.1, 2.45}) {
      double target = 2.0 * p.x0 * std::cos(p.omega * t);
      double best_r = 0, best = -1;
      for (int i = 0; i <= 4000; ++i) {
        double r = -12.0 + 24.0 * i / 4000.0;
        double d = std::norm(rel_wavefunction_free(p, r, t));
        if (d > best) best = d, best_r = r;
      }
      CHECK(std::abs(std::abs(best_r) - std::abs(target)) < 0.02);
    }
  }
}
