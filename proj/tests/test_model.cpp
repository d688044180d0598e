#include <sstream>

#include "collgate/errors.hpp"
#include "collgate/model.hpp"
#include "doctest.h"

using namespace collgate;

TEST_SUITE("model") {
  TEST_CASE("preset paper-fig2 reproduces the dimensionless parameters") {
    TrapParams p = preset("paper-fig2");
    CHECK(p.omega == 1.0);
    CHECK(p.omega0 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(p.omega_perp == doctest::Approx(150.0 / 17.23).epsilon(1e-12));
    CHECK(p.x0 == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(p.a_bb == doctest::Approx(0.0620757536).epsilon(1e-8));
    CHECK(p.a_ab == p.a_bb);
    CHECK(p.has_si_anchors());
    CHECK(effective_1d_coupling(p, StatePair::bb) ==
          doctest::Approx(1.0808314609).epsilon(1e-8));
  }

  TEST_CASE("preset with unknown name throws") {
    CHECK_THROWS_AS(preset("no-such-preset"), contract_error);
    CHECK_THROWS_AS(preset_schedule("no-such-preset"), contract_error);
  }

  TEST_CASE("oscillator length matches the rubidium anchor") {
    double ax_nm = oscillator_length_si(1.44316060e-25, 2.0 * pi * 17.23e3) * 1e9;
    CHECK(ax_nm == doctest::Approx(82.157).epsilon(1e-3));
    CHECK_THROWS_AS(oscillator_length_si(-1.0, 1.0), contract_error);
  }

  TEST_CASE("SI round trip preserves the parameters") {
    TrapParams p = preset("paper-fig2");
    SiParams si = to_si(p);
    CHECK(si.omega_hz == doctest::Approx(17.23e3).epsilon(1e-12));
    CHECK(si.omega0_hz == doctest::Approx(2 * 17.23e3).epsilon(1e-12));
    CHECK(si.a_bb_nm == doctest::Approx(5.1).epsilon(1e-10));
    TrapParams back = to_dimensionless(si);
    CHECK(back.x0 == doctest::Approx(p.x0).epsilon(1e-12));
    CHECK(back.a_ab == doctest::Approx(p.a_ab).epsilon(1e-12));
    TrapParams bare;  // no anchors
    CHECK_THROWS_AS(to_si(bare), contract_error);
  }

  TEST_CASE("validation rejects hard violations and flags soft ones") {
    TrapParams p = preset("paper-fig2");
    CHECK(p.validate().empty());
    TrapParams bad = p;
    bad.omega = 2.0;
    CHECK_THROWS_AS(bad.validate(), contract_error);
    bad = p;
    bad.x0 = -1.0;
    CHECK_THROWS_AS(bad.validate(), contract_error);
    bad = p;
    bad.omega_si.reset();  // one anchor without the other
    CHECK_THROWS_AS(bad.validate(), contract_error);
    TrapParams soft = p;
    soft.x0 = 1.0;  // exp(-2) well overlap
    CHECK(!soft.validate().empty());
    soft = p;
    soft.a_bb = -0.01;
    CHECK(!soft.validate().empty());
  }

  TEST_CASE("gate schedule durations and checks") {
    GateSchedule s;
    CHECK(s.n_periods == 7);
    CHECK(s.tau_over_tosc() == doctest::Approx(7.0));
    CHECK(s.tau() == doctest::Approx(7.0 * t_osc));
    GateSchedule shifted{7, true, 0.0013772};
    CHECK(shifted.tau_over_tosc() == doctest::Approx(7.0 * 1.0013772).epsilon(1e-12));
    shifted.check();
    GateSchedule bad{7, false, 0.01};
    CHECK_THROWS_AS(bad.check(), contract_error);
    bad = {7, true, 0.5};
    CHECK_THROWS_AS(bad.check(), contract_error);
    bad = {0, false, 0.0};
    CHECK_THROWS_AS(bad.check(), contract_error);
  }

  TEST_CASE("potentials: double well outside the gate window, single well inside") {
    TrapParams p = preset("paper-fig2");
    GateSchedule s;
    CHECK(potential_va(p, p.x0) == doctest::Approx(0.0));
    CHECK(potential_va(p, -p.x0) == doctest::Approx(0.0));
    CHECK(potential_va(p, 1.5) == potential_va(p, -1.5));
    CHECK(potential_vb(p, 2.0, 1.0, s) == doctest::Approx(2.0));           // x^2/2 inside
    CHECK(potential_vb(p, 2.0, -1.0, s) == potential_va(p, 2.0));          // before
    CHECK(potential_vb(p, 2.0, s.tau() + 1.0, s) == potential_va(p, 2.0)); // after
  }

  TEST_CASE("config parsing: dimensionless and SI forms") {
    std::istringstream dimless(R"({"omega0_ratio": 2.0, "omega_perp_ratio": 8.0,
      "x0_over_ax": 5.0, "a_bb_over_ax": 0.06, "n_periods": 3})");
    RunInput in = load_config(dimless);
    CHECK(in.params.omega_perp == doctest::Approx(8.0));
    CHECK(in.params.a_ab == doctest::Approx(0.06));  // defaults to a_bb
    CHECK(in.schedule.n_periods == 3);

    std::istringstream si(R"({"mass_kg": 1.44316060e-25, "omega_hz": 17230.0,
      "omega_perp_hz": 150000.0, "x0_nm": 410.78, "a_bb_nm": 5.1})");
    RunInput in2 = load_config(si);
    CHECK(in2.params.x0 == doctest::Approx(5.0).epsilon(1e-4));
    CHECK(in2.schedule.n_periods == 7);

    std::istringstream junk("{not json");
    CHECK_THROWS_AS(load_config(junk), contract_error);
    CHECK_THROWS_AS(load_config_file("/nonexistent/config.json"), contract_error);
  }

  TEST_CASE("config with period shift enables the shifted schedule") {
    std::istringstream cfg(R"({"omega0_ratio": 2.0, "x0_over_ax": 5.0,
      "period_shift": 0.0014})");
    RunInput in = load_config(cfg);
    CHECK(in.schedule.use_shifted_period);
    CHECK(in.schedule.period_shift == doctest::Approx(0.0014));
  }
}
