#include <complex>
#include <sstream>

#include "collgate/errors.hpp"
#include "collgate/io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace collgate;

TEST_SUITE("io") {
  TEST_CASE("numbers are printed with full round-trip precision") {
    CHECK(format_g15(0.0) == "0");
    CHECK(format_g15(1.5) == "1.5");
    CHECK(format_g15(3.1623840833) == "3.1623840833");
    double v = 0.1 + 0.2;
    CHECK(std::stod(format_g15(v)) == doctest::Approx(v).epsilon(1e-15));
  }

  TEST_CASE("trajectory CSV: schema line, header, one row per sample") {
    OverlapSeries s;
    s.t_over_tosc = {0.0, 0.5};
    s.norms = {1.0, 0.999};
    s.o0 = {{1.0, 0.0}, {0.3, -0.4}};
    s.o_init = {{1.0, 0.0}, {0.0, 0.5}};
    s.phase_coll = {0.0, 0.9273};
    std::ostringstream out;
    write_trajectory_csv(out, s);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "# collgate-csv-1 trajectory");
    std::getline(in, line);
    CHECK(line == "t_over_Tosc, norm, re_O0, im_O0, abs_O, phase_coll_rad");
    std::getline(in, line);
    CHECK(line == "0, 1, 1, 0, 1, 0");
    std::getline(in, line);
    CHECK(line == "0.5, 0.999, 0.3, -0.4, 0.5, 0.9273");
    CHECK(!std::getline(in, line));
  }

  TEST_CASE("run summary JSON parses back with the same values") {
    RunSummary s;
    s.phi_coll = 3.1623840833;
    s.phi_a = 426.8809954984;
    s.phi_b = 404.8898469233;
    s.o0_abs = 0.9753113214;
    s.o_abs = 0.98;
    s.flags = {"basis-tail", "perturbative-regime-violated"};
    std::ostringstream out;
    write_summary_json(out, s);
    nlohmann::json j = nlohmann::json::parse(out.str());
    CHECK(j.at("phi_coll").get<double>() == s.phi_coll);
    CHECK(j.at("phi_a").get<double>() == s.phi_a);
    CHECK(j.at("phi_b").get<double>() == s.phi_b);
    CHECK(j.at("O0_abs").get<double>() == s.o0_abs);
    CHECK(j.at("O_abs").get<double>() == s.o_abs);
    CHECK(j.at("flags").get<std::vector<std::string>>() == s.flags);
  }

  TEST_CASE("fidelity CSV and report JSON carry the thermal table") {
    std::vector<FidelityRow> rows = {{0.0, 0.0, 0.9876, 0.9876}, {2.0, 0.6065, 0.956, 0.957}};
    std::ostringstream out;
    write_fidelity_csv(out, rows);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "# collgate-csv-1 fidelity");
    std::getline(in, line);
    CHECK(line == "kT_over_hw0, gamma, F_full, F_expansion");
    std::getline(in, line);
    CHECK(line == "0, 0, 0.9876, 0.9876");

    FidelityReport r;
    r.a = 1.0;
    r.b = 0.99;
    r.c = 0.98;
    r.phi_bb = 3.14;
    r.f0 = 0.9876;
    r.per_n = {{0.9753, 3.1624}, {0.95, 3.1}};
    r.table = rows;
    std::ostringstream jout;
    write_fidelity_report_json(jout, r);
    nlohmann::json j = nlohmann::json::parse(jout.str());
    CHECK(j.at("F0").get<double>() == r.f0);
    CHECK(j.at("per_n").size() == 2);
    CHECK(j.at("per_n")[0].at("O0_abs").get<double>() == 0.9753);
    CHECK(j.at("table")[1].at("gamma").get<double>() == 0.6065);
  }

  TEST_CASE("mode coefficients survive a JSON round trip") {
    OscillatorBasis b;
    b.n_max = 3;
    ModeCoefficients c{b, Eigen::VectorXcd(4)};
    c.amps << std::complex<double>(0.5, 0.0), std::complex<double>(0.0, -0.25),
        std::complex<double>(1e-16, 1.0), std::complex<double>(-0.125, 0.75);
    std::ostringstream out;
    write_coeffs_json(out, c);
    std::istringstream in(out.str());
    ModeCoefficients back = read_coeffs_json(in, b);
    CHECK((back.amps - c.amps).cwiseAbs().maxCoeff() == 0.0);
    CHECK(back.basis.n_max == 3);

    OscillatorBasis wrong = b;
    wrong.n_max = 5;
    std::istringstream in2(out.str());
    CHECK_THROWS_AS(read_coeffs_json(in2, wrong), contract_error);
    std::istringstream junk("not json at all");
    CHECK_THROWS_AS(read_coeffs_json(junk, b), contract_error);
    std::istringstream short_arrays(R"({"n_max": 3, "re": [1, 0], "im": [0, 0]})");
    CHECK_THROWS_AS(read_coeffs_json(short_arrays, b), contract_error);
  }

  TEST_CASE("CLI error objects are machine readable") {
    nlohmann::json j = nlohmann::json::parse(error_json("contract", "x0 must be positive"));
    CHECK(j.at("error") == "contract");
    CHECK(j.at("message") == "x0 must be positive");
  }

  TEST_CASE("file writers reject unopenable paths") {
    OverlapSeries s;
    CHECK_THROWS_AS(write_trajectory_csv("/nonexistent-dir/x.csv", s), contract_error);
    CHECK_THROWS_AS(write_summary_json("/nonexistent-dir/x.json", RunSummary{}), contract_error);
  }
}
