#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "collgate/errors.hpp"
#include "collgate/fidelity.hpp"
#include "doctest.h"

using namespace collgate;

TEST_SUITE("fidelity") {
  TEST_CASE("ideal limits of the worst-case fidelity") {
    CHECK(fidelity_full(1, 1, 1, pi) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity_full(1, 1, 1, 0.0) == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    CHECK_THROWS_AS(fidelity_full(1.5, 1, 1, pi), contract_error);
    CHECK_THROWS_AS(fidelity_full(1, -0.1, 1, pi), contract_error);
  }

  TEST_CASE("restored-motion specialization ties full and simple forms together") {
    for (double c : {0.9, 0.95, 0.987, 1.0})
      for (int i = 0; i <= 36; ++i) {
        double phi = 2.0 * pi * i / 36.0;
        CHECK(fidelity_full(1.0, c, c, phi) ==
              doctest::Approx(fidelity_simple(c * c, phi)).epsilon(1e-12).scale(1.0));
      }
    CHECK(fidelity_simple(1.0, pi) == doctest::Approx(1.0));
    CHECK(fidelity_simple(0.9753, pi) == doctest::Approx(0.5 * (1.0 + 0.9753)));
  }

  TEST_CASE("the simplex minimum lower-bounds every sampled product state") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      double a = 0.9 + 0.1 * uni(rng), b = 0.9 + 0.1 * uni(rng), c = 0.9 + 0.1 * uni(rng);
      double phi = 2.0 * pi * uni(rng);
      double x = std::cos(phi);
      Eigen::Matrix4d g;
      g << 1, a, a, -b * b * x,
           a, 1, a * a, -b * c * x,
           a, a * a, 1, -b * c * x,
           -b * b * x, -b * c * x, -b * c * x, 1;
      double f = fidelity_full(a, b, c, phi);
      CHECK(f >= -1e-12);
      CHECK(f <= 1.0 + 1e-12);
      for (int s = 0; s < 20; ++s) {
        Eigen::Vector4d p;
        for (int k = 0; k < 4; ++k) p[k] = -std::log(uni(rng) + 1e-300);
        p /= p.sum();
        CHECK(f <= p.dot(g * p) + 1e-10);
      }
    }
  }

  TEST_CASE("gate unitary: conditional phase pi gives zero residue") {
    GatePhases ideal;
    ideal.phi_bb = pi;
    GateUnitary u = gate_unitary(ideal);
    CHECK(u.chi == doctest::Approx(-pi).epsilon(1e-14));
    CHECK(u.residue == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    GatePhases off;
    off.phi_bb = 0.9 * pi;
    CHECK(gate_unitary(off).residue == doctest::Approx(0.1 * pi).epsilon(1e-10));
    GatePhases trivial;
    CHECK(gate_unitary(trivial).residue == doctest::Approx(pi).epsilon(1e-12));
    // single-atom phases cancel out of the conditional combination
    GatePhases shifted = ideal;
    shifted.phi_a = 1.7;
    shifted.phi_b = -0.4;
    CHECK(gate_unitary(shifted).residue == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
  }

  TEST_CASE("thermal weights form a truncated geometric distribution") {
    for (double t : {0.25, 1.0, 2.0, 3.0}) {
      std::vector<double> w = thermal_weights(t, 6);
      REQUIRE(w.size() == 7);
      double sum = 0;
      for (double v : w) sum += v;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
      double gamma = std::exp(-1.0 / t);
      for (size_t n = 1; n < w.size(); ++n)
        CHECK(w[n] / w[n - 1] == doctest::Approx(gamma).epsilon(1e-12));
    }
    std::vector<double> cold = thermal_weights(0.0, 6);
    CHECK(cold[0] == doctest::Approx(1.0));
    CHECK_THROWS_AS(thermal_weights(-1.0, 6), contract_error);
  }

  TEST_CASE("thermal fidelity: identical channels are temperature independent") {
    std::vector<ExcitedChannel> per_n(7, {0.9753, pi});
    double f0 = fidelity_simple(0.9753, pi);
    for (double t : {0.0, 1.0, 3.0}) {
      ThermalFidelity tf = fidelity_thermal(per_n, t);
      CHECK(tf.full == doctest::Approx(f0).epsilon(1e-12));
    }
  }

  TEST_CASE("thermal expansion telescopes the full sum at small gamma") {
    std::vector<ExcitedChannel> per_n;
    for (int n = 0; n < 7; ++n)
      per_n.push_back({0.975 - 0.04 * n, pi * (1.0 - 0.01 * n)});
    for (double t : {0.25, 0.5, 1.0}) {
      ThermalFidelity tf = fidelity_thermal(per_n, t);
      CHECK(tf.gamma == doctest::Approx(std::exp(-1.0 / t)).epsilon(1e-14));
      CHECK(tf.expansion == doctest::Approx(tf.full).epsilon(5e-3));
      CHECK(tf.full < fidelity_thermal(per_n, 0.0).full + 1e-12);  // heating only hurts
    }
  }
}
