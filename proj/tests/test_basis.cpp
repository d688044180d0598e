#include <cmath>

#include "collgate/basis.hpp"
#include "collgate/errors.hpp"
#include "doctest.h"

using namespace collgate;

TEST_SUITE("basis") {
  TEST_CASE("eigenfunctions are orthonormal under Gauss-Hermite quadrature") {
    OscillatorBasis b{1.0, 0.5, 0.3, 10};
    GaussHermiteRule rule(40);
    for (int m = 0; m <= b.n_max; ++m)
      for (int n = m; n <= b.n_max; ++n) {
        double ip = rule.integrate(
            [&](double x) { return b.eigenfunction(m, x) * b.eigenfunction(n, x); },
            b.alpha(), b.center);
        CHECK(ip == doctest::Approx(m == n ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
      }
    CHECK_THROWS_AS(b.eigenfunction(11, 0.0), std::out_of_range);
  }

  TEST_CASE("quadrature integrates gaussians and moments exactly") {
    GaussHermiteRule rule(20);
    double i0 = rule.integrate([](double x) { return std::exp(-2.0 * x * x); }, 2.0, 0.0);
    CHECK(i0 == doctest::Approx(std::sqrt(pi / 2.0)).epsilon(1e-13));
    double i2 = rule.integrate([](double x) { return x * x * std::exp(-x * x); }, 1.0, 0.0);
    CHECK(i2 == doctest::Approx(std::sqrt(pi) / 2.0).epsilon(1e-13));
    CHECK_THROWS_AS(GaussHermiteRule(0), contract_error);
  }

  TEST_CASE("large rules keep accurate raw weights") {
    // raw weights sum to sqrt(pi); the outer nodes are the fragile ones
    for (int n : {60, 300}) {
      GaussHermiteRule rule(n);
      double s = 0;
      for (int i = 0; i < n; ++i)
        s += std::exp(rule.log_weights[i] - rule.nodes[i] * rule.nodes[i]);
      CHECK(s == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
    }
  }

  TEST_CASE("displaced gaussian projection: identity, completeness, quadrature") {
    OscillatorBasis b{1.0, 0.5, 0.0, 80};
    Eigen::VectorXd same = project_displaced_gaussian(b, b.frequency, b.center);
    CHECK(same[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(same.tail(80).cwiseAbs().maxCoeff() < 1e-14);

    Eigen::VectorXd g = project_displaced_gaussian(b, 2.0, 1.5);
    CHECK(g.squaredNorm() == doctest::Approx(1.0).epsilon(1e-13));
    GaussHermiteRule rule(160);
    double be = b.mass * 2.0;
    for (int n : {0, 1, 5, 12}) {
      double ip = rule.integrate(
          [&](double x) {
            double gauss = std::pow(be / pi, 0.25) *
                           std::exp(-be * (x - 1.5) * (x - 1.5) / 2.0);
            return gauss * b.eigenfunction(n, x);
          },
          (b.alpha() + be) / 2.0, 0.75);
      CHECK(g[n] == doctest::Approx(ip).epsilon(1e-10).scale(1.0));
    }
    CHECK_THROWS_AS(project_displaced_gaussian(b, -1.0, 0.0), contract_error);
  }

  TEST_CASE("standard bases of the preset") {
    TrapParams p = preset("paper-fig2");
    OscillatorBasis rel = relative_basis(p, 60);
    CHECK(rel.mass == 0.5);
    CHECK(rel.frequency == 1.0);
    CHECK(rel.center == 0.0);
    CHECK(omega_tilde(p) == doctest::Approx(std::sqrt(2.5)).epsilon(1e-14));
    CHECK(collision_offset_xi(p) == doctest::Approx(8.0 / std::sqrt(2.0)).epsilon(1e-14));
    OscillatorBasis bR = pair_cm_basis(p, 40), br = pair_rel_basis(p, 40);
    CHECK(bR.mass == 2.0);
    CHECK(br.mass == 0.5);
    CHECK(bR.frequency == doctest::Approx(br.frequency));
    CHECK(bR.center == doctest::Approx(-collision_offset_xi(p) / std::sqrt(2.0)));
    CHECK(br.center == doctest::Approx(std::sqrt(2.0) * collision_offset_xi(p)));
  }

  TEST_CASE("two-lobe initial state: unit norm, even parity") {
    TrapParams p = preset("paper-fig2");
    ModeCoefficients c = initial_coeffs_same(p, 60);
    CHECK(c.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    for (int n = 1; n <= 60; n += 2) CHECK(std::abs(c.amps[n]) < 1e-14);
    CHECK(c.tail_sq() < 1e-12);
  }

  TEST_CASE("excited projections agree with the closed form and the grid values") {
    TrapParams p = preset("paper-fig2");
    ModeCoefficients gs = initial_coeffs_same(p, 60);
    ModeCoefficients ex0 = excited_relative_coeffs(p, 0, 60);
    CHECK((ex0.amps - gs.amps).cwiseAbs().maxCoeff() < 1e-12);
    for (int n = 1; n <= 4; ++n) {
      ModeCoefficients ex = excited_relative_coeffs(p, n, 60 + 4 * n);
      CHECK(ex.norm_sq() == doctest::Approx(1.0).epsilon(1e-10));
      // reconstruct at sample points against the direct two-lobe value
      for (double r : {-10.5, -3.0, 0.0, 2.2, 9.8}) {
        Eigen::VectorXd f = ex.basis.eigenfunctions_at(r);
        double rec = 0;
        for (int k = 0; k <= ex.basis.n_max; ++k) rec += ex.amps[k].real() * f[k];
        CHECK(rec == doctest::Approx(excited_relative_value(p, n, r)).epsilon(1e-8).scale(1.0));
      }
    }
    CHECK_THROWS_AS(excited_relative_coeffs(p, -1, 60), contract_error);
  }

  TEST_CASE("pair product state reproduces the measured norm deficit") {
    TrapParams p = preset("paper-fig2");
    PairCoefficients c = initial_coeffs_diff(p, 40, 40);
    CHECK(c.amps.rows() == 41);
    CHECK(c.amps.cols() == 41);
    CHECK(c.norm_sq() == doctest::Approx(0.9993830914).epsilon(1e-8));
    PairCoefficients big = initial_coeffs_diff(p, 60, 60);
    CHECK(big.norm_sq() > c.norm_sq());
    CHECK(big.norm_sq() == doctest::Approx(1.0).epsilon(1e-5));
  }

  TEST_CASE("contact matrix elements form a rank-1 symmetric matrix") {
    OscillatorBasis b{1.0, 0.5, 0.0, 12};
    Eigen::MatrixXd v = delta_matrix_elements(b);
    CHECK((v - v.transpose()).cwiseAbs().maxCoeff() < 1e-15);
    Eigen::VectorXd psi0 = b.eigenfunctions_at(0.0);
    CHECK((v - psi0 * psi0.transpose()).cwiseAbs().maxCoeff() < 1e-15);
    // odd modes vanish at the origin
    for (int n = 1; n <= 12; n += 2) CHECK(v(n, n) == 0.0);
  }
}
