#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>

#include "collgate/errors.hpp"
#include "collgate/model.hpp"
#include "collgate/oracle.hpp"
#include "doctest.h"

using namespace collgate;

TEST_SUITE("oracle") {
  TEST_CASE("initial grid states are normalized and compactly supported") {
    TrapParams p = preset("paper-fig2");
    GridState1D g1 = make_initial_bb(p);
    CHECK(g1.half_width == doctest::Approx(2.0 * p.x0 + 14.0));
    CHECK(g1.n_points == 2048);
    CHECK(g1.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g1.boundary_amplitude() < 1e-12);
    GridState2D g2 = make_initial_ab(p, 0.0, 256);
    CHECK(g2.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g2.boundary_amplitude() < 1e-12);
  }

  TEST_CASE("harmonic ground state acquires only the zero-point phase") {
    GridState1D s;
    s.half_width = 16.0;
    s.n_points = 1024;
    s.sigma = 0.05;
    s.psi.resize(s.n_points);
    double mass = 0.5, freq = 1.0;
    Eigen::VectorXd x = s.grid();
    for (int i = 0; i < s.n_points; ++i)
      s.psi[i] = std::pow(mass * freq / pi, 0.25) *
                 std::exp(-mass * freq * x[i] * x[i] / 2.0);
    double t_end = t_osc / 2.0;
    GridState1D out = grid_propagate_harmonic(s, mass, freq, t_end);
    std::complex<double> ov = out.psi.dot(s.psi) * s.dx();  // conj(final) . initial
    CHECK(std::abs(ov) == doctest::Approx(1.0).epsilon(1e-10));
    // psi(t) = e^{-i w t / 2} psi(0) -> conj gives +pi/2 at the half period
    CHECK(std::arg(ov) == doctest::Approx(pi / 2.0).epsilon(1e-6));
  }

  TEST_CASE("short interacting run conserves norm and stays near the free twin") {
    TrapParams p = preset("paper-fig2");
    GridState1D g0 = make_initial_bb(p);
    GridTrajectory1D tr = grid_propagate_bb(g0, p, t_osc / 4.0);
    CHECK(tr.final_state.norm_sq() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(tr.o0.front() - 1.0) < 1e-12);
    CHECK(std::abs(tr.o0.back()) > 0.97);  // the first collision barely dents the overlap
    CHECK(tr.times.back() == doctest::Approx(t_osc / 4.0).epsilon(1e-12));
  }

  TEST_CASE("resolution preconditions are enforced") {
    TrapParams p = preset("paper-fig2");
    GridState1D fine_sigma = make_initial_bb(p, 0.0, 2048, 0.01);  // sigma < 2 dx
    CHECK_THROWS_AS(grid_propagate_bb(fine_sigma, p, t_osc / 8.0), contract_error);
    GridState1D ok = make_initial_bb(p);
    GridSettings coarse_dt;
    coarse_dt.dt = t_osc / 16.0;
    CHECK_THROWS_AS(grid_propagate_bb(ok, p, t_osc / 8.0, coarse_dt), contract_error);
  }

  TEST_CASE("regularization study extrapolates geometric sequences") {
    // v(sigma) with successive differences halving: Aitken recovers the limit
    auto observable = [](double sigma) { return 1.0 + sigma; };
    RegularizationStudy st = delta_regularization_study({0.4, 0.2, 0.1}, observable);
    CHECK(st.monotone);
    CHECK(st.extrapolated == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(st.values.size() == 3);

    auto wobble = [](double sigma) { return (sigma == 0.2) ? 2.0 : 1.0; };
    RegularizationStudy bad = delta_regularization_study({0.4, 0.2, 0.1}, wobble);
    CHECK(!bad.monotone);
    CHECK(bad.extrapolated == doctest::Approx(bad.values.back()));
    CHECK_THROWS_AS(delta_regularization_study({0.1, 0.05}, observable), contract_error);
  }

  TEST_CASE("regularized delta integrates to one") {
    for (double sigma : {0.1, 0.05}) {
      GridState1D g;
      g.half_width = 4.0;
      g.n_points = 8001;
      double h = 8.0 / 8000;
      double acc = 0;
      for (int i = 0; i <= 8000; ++i) {
        double x = -4.0 + i * h;
        acc += std::exp(-x * x / (2.0 * sigma * sigma)) / (sigma * std::sqrt(2.0 * pi)) * h;
      }
      CHECK(acc == doctest::Approx(1.0).epsilon(1e-10));
    }
  }

  TEST_CASE("density frame dumps carry a parseable header and raw payload") {
    std::vector<Eigen::MatrixXd> frames(3, Eigen::MatrixXd::Constant(4, 5, 1.5));
    frames[1](2, 3) = -7.0;
    std::string path = "oracle_dump_test.bin";
    dump_density_frames(path, 4, 5, 0.1, 0.01, frames);
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header.find("\"nx\": 4") != std::string::npos);
    CHECK(header.find("\"frames\": 3") != std::string::npos);
    std::vector<double> payload(3 * 4 * 5);
    f.read(reinterpret_cast<char*>(payload.data()), payload.size() * sizeof(double));
    CHECK(f.gcount() == static_cast<long>(payload.size() * sizeof(double)));
    CHECK(payload[0] == 1.5);
    // frame 1, row-major offset of (2, 3) in a 4x5 frame
    CHECK(payload[20 + 2 * 5 + 3] == -7.0);
    f.close();
    std::remove(path.c_str());
  }
}
