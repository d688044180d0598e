#include "collgate/io.hpp"

#include <cstdio>
#include <fstream>
#include "json.hpp"
#include <ostream>

#include "collgate/errors.hpp"

namespace collgate {

std::string format_g15(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

namespace {

template <class Writer>
void to_file(const std::string& path, Writer&& w) {
  std::ofstream f(path);
  if (!f) throw contract_error("cannot open output file: " + path);
  w(f);
}

nlohmann::json summary_to_json(const RunSummary& s) {
  return nlohmann::json{{"phi_coll", s.phi_coll}, {"phi_a", s.phi_a},   {"phi_b", s.phi_b},
                        {"O0_abs", s.o0_abs},     {"O_abs", s.o_abs},   {"flags", s.flags}};
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const OverlapSeries& s) {
  out << "# " << csv_schema_version << " trajectory\n";
  out << "t_over_Tosc, norm, re_O0, im_O0, abs_O, phase_coll_rad\n";
  for (size_t i = 0; i < s.t_over_tosc.size(); ++i) {
    out << format_g15(s.t_over_tosc[i]) << ", " << format_g15(s.norms[i]) << ", "
        << format_g15(s.o0[i].real()) << ", " << format_g15(s.o0[i].imag()) << ", "
        << format_g15(std::abs(s.o_init[i])) << ", " << format_g15(s.phase_coll[i]) << "\n";
  }
}

void write_trajectory_csv(const std::string& path, const OverlapSeries& s) {
  to_file(path, [&](std::ostream& f) { write_trajectory_csv(f, s); });
}

void write_summary_json(std::ostream& out, const RunSummary& s) {
  out << summary_to_json(s).dump(2) << "\n";
}

void write_summary_json(const std::string& path, const RunSummary& s) {
  to_file(path, [&](std::ostream& f) { write_summary_json(f, s); });
}

void write_fidelity_csv(std::ostream& out, const std::vector<FidelityRow>& rows) {
  out << "# " << csv_schema_version << " fidelity\n";
  out << "kT_over_hw0, gamma, F_full, F_expansion\n";
  for (const auto& r : rows)
    out << format_g15(r.kt_over_hw0) << ", " << format_g15(r.gamma) << ", "
        << format_g15(r.f_full) << ", " << format_g15(r.f_expansion) << "\n";
}

void write_fidelity_csv(const std::string& path, const std::vector<FidelityRow>& rows) {
  to_file(path, [&](std::ostream& f) { write_fidelity_csv(f, rows); });
}

void write_fidelity_report_json(std::ostream& out, const FidelityReport& r) {
  nlohmann::json per = nlohmann::json::array();
  for (const auto& c : r.per_n) per.push_back({{"O0_abs", c.o0_abs}, {"phi", c.phi}});
  nlohmann::json table = nlohmann::json::array();
  for (const auto& row : r.table)
    table.push_back({{"kT_over_hw0", row.kt_over_hw0},
                     {"gamma", row.gamma},
                     {"F_full", row.f_full},
                     {"F_expansion", row.f_expansion}});
  nlohmann::json j{{"A", r.a},        {"B", r.b},   {"C", r.c},     {"phi_bb", r.phi_bb},
                   {"F0", r.f0},      {"per_n", per}, {"table", table}};
  out << j.dump(2) << "\n";
}

void write_fidelity_report_json(const std::string& path, const FidelityReport& r) {
  to_file(path, [&](std::ostream& f) { write_fidelity_report_json(f, r); });
}

void write_coeffs_json(std::ostream& out, const ModeCoefficients& c) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (int n = 0; n < c.amps.size(); ++n) {
    re.push_back(c.amps[n].real());
    im.push_back(c.amps[n].imag());
  }
  out << nlohmann::json{{"n_max", c.basis.n_max}, {"re", re}, {"im", im}}.dump(2) << "\n";
}

ModeCoefficients read_coeffs_json(std::istream& in, const OscillatorBasis& basis) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw contract_error(std::string("coefficient file is not valid JSON: ") + e.what());
  }
  int n_max = j.at("n_max").get<int>();
  auto re = j.at("re").get<std::vector<double>>();
  auto im = j.at("im").get<std::vector<double>>();
  if (n_max != basis.n_max || re.size() != size_t(n_max + 1) || im.size() != re.size())
    throw contract_error("coefficient file does not match the requested basis size");
  ModeCoefficients c{basis, Eigen::VectorXcd(n_max + 1)};
  for (int n = 0; n <= n_max; ++n) c.amps[n] = {re[n], im[n]};
  return c;
}

std::string error_json(const std::string& kind, const std::string& message) {
  return nlohmann::json{{"error", kind}, {"message", message}}.dump();
}

}  // namespace collgate
