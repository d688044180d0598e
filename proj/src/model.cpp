#include "collgate/model.hpp"

#include <cmath>
#include <fstream>
#include "json.hpp"
#include <sstream>

#include "collgate/errors.hpp"

namespace collgate {

namespace {
constexpr double rb87_mass_kg = 1.44316060e-25;
constexpr double fig2_omega_hz = 17.23e3;
constexpr double fig2_omega_perp_hz = 150.0e3;
constexpr double fig2_a_s_nm = 5.1;
}  // namespace

std::vector<std::string> TrapParams::validate() const {
  if (omega != 1.0) throw contract_error("merged-well frequency must be 1 in internal units");
  if (omega0 <= 0 || omega_perp < 0) throw contract_error("frequencies must be positive");
  if (x0 < 0) throw contract_error("well separation must be non-negative");
  if ((mass_si && !omega_si) || (omega_si && !mass_si))
    throw contract_error("SI anchors require both mass and frequency");
  std::vector<std::string> warnings;
  if (ground_state_well_overlap() > 1e-6)
    warnings.push_back("initial wells overlap: exp(-omega0 x0^2) > 1e-6");
  if (a_bb < 0 || a_ab < 0)
    warnings.push_back("negative scattering length: attractive contact interaction");
  if (omega_perp > 0 && omega_perp < 4.0)
    warnings.push_back("weak transverse confinement: 1D reduction questionable");
  return warnings;
}

double TrapParams::ground_state_well_overlap() const { return std::exp(-omega0 * x0 * x0); }

double GateSchedule::tau_over_tosc() const {
  double base = static_cast<double>(n_periods);
  return use_shifted_period ? base * (1.0 + period_shift) : base;
}

double GateSchedule::tau() const { return tau_over_tosc() * t_osc; }

void GateSchedule::check() const {
  if (n_periods < 1) throw contract_error("gate must last at least one period");
  if (!use_shifted_period && period_shift != 0.0)
    throw contract_error("period_shift set but use_shifted_period is false");
  if (use_shifted_period && std::abs(period_shift) > 0.1)
    throw contract_error("period_shift outside the small-correction regime");
}

double oscillator_length_si(double mass_kg, double omega_rad_s) {
  if (mass_kg <= 0 || omega_rad_s <= 0) throw contract_error("mass and frequency must be positive");
  return std::sqrt(hbar_si / (mass_kg * omega_rad_s));
}

TrapParams to_dimensionless(const SiParams& si) {
  if (si.mass_kg <= 0 || si.omega_hz <= 0) throw contract_error("SI mass and frequency required");
  double w = 2.0 * pi * si.omega_hz;
  double ax_nm = oscillator_length_si(si.mass_kg, w) * 1e9;
  TrapParams p;
  p.omega0 = si.omega0_hz / si.omega_hz;
  p.omega = 1.0;
  p.omega_perp = si.omega_perp_hz / si.omega_hz;
  p.x0 = si.x0_nm / ax_nm;
  p.a_bb = si.a_bb_nm / ax_nm;
  p.a_ab = si.a_ab_nm / ax_nm;
  p.mass_si = si.mass_kg;
  p.omega_si = w;
  return p;
}

SiParams to_si(const TrapParams& p) {
  if (!p.has_si_anchors()) throw contract_error("dimensionless parameters carry no SI anchors");
  double ax_nm = oscillator_length_si(*p.mass_si, *p.omega_si) * 1e9;
  SiParams si;
  si.mass_kg = *p.mass_si;
  si.omega_hz = *p.omega_si / (2.0 * pi);
  si.omega0_hz = p.omega0 * si.omega_hz;
  si.omega_perp_hz = p.omega_perp * si.omega_hz;
  si.x0_nm = p.x0 * ax_nm;
  si.a_bb_nm = p.a_bb * ax_nm;
  si.a_ab_nm = p.a_ab * ax_nm;
  return si;
}

double effective_1d_coupling(const TrapParams& p, StatePair pair,
                             std::vector<std::string>* warnings) {
  double a_s = (pair == StatePair::bb) ? p.a_bb : p.a_ab;
  if (a_s < 0 && warnings)
    warnings->push_back("negative scattering length: coupling is attractive");
  return 2.0 * a_s * p.omega_perp;
}

double potential_va(const TrapParams& p, double x) {
  double d = std::abs(x) - p.x0;
  return 0.5 * p.omega0 * p.omega0 * d * d;
}

double potential_vb(const TrapParams& p, double x, double t, const GateSchedule& s) {
  if (t >= 0 && t <= s.tau()) return 0.5 * x * x;
  return potential_va(p, x);
}

namespace {

RunInput parse_config(const nlohmann::json& j) {
  RunInput in;
  bool si_form = j.contains("mass_kg") || j.contains("omega_hz");
  if (si_form) {
    SiParams si;
    si.mass_kg = j.at("mass_kg").get<double>();
    si.omega_hz = j.at("omega_hz").get<double>();
    si.omega0_hz = j.value("omega0_hz", 2.0 * si.omega_hz);
    si.omega_perp_hz = j.value("omega_perp_hz", 0.0);
    si.x0_nm = j.value("x0_nm", 0.0);
    si.a_bb_nm = j.value("a_bb_nm", 0.0);
    si.a_ab_nm = j.value("a_ab_nm", si.a_bb_nm);
    in.params = to_dimensionless(si);
  } else {
    in.params.omega0 = j.value("omega0_ratio", 2.0);
    in.params.omega_perp = j.value("omega_perp_ratio", 0.0);
    in.params.x0 = j.value("x0_over_ax", 0.0);
    in.params.a_bb = j.value("a_bb_over_ax", 0.0);
    in.params.a_ab = j.value("a_ab_over_ax", in.params.a_bb);
  }
  in.schedule.n_periods = j.value("n_periods", 7);
  if (j.contains("period_shift")) {
    in.schedule.use_shifted_period = true;
    in.schedule.period_shift = j.at("period_shift").get<double>();
  }
  in.params.validate();
  in.schedule.check();
  return in;
}

}  // namespace

RunInput load_config(std::istream& is) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw contract_error(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

RunInput load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw contract_error("cannot open config file: " + path);
  return load_config(f);
}

TrapParams preset(const std::string& name) {
  if (name != "paper-fig2") throw contract_error("unknown preset: " + name);
  SiParams si;
  si.mass_kg = rb87_mass_kg;
  si.omega_hz = fig2_omega_hz;
  si.omega0_hz = 2.0 * fig2_omega_hz;
  si.omega_perp_hz = fig2_omega_perp_hz;
  double ax_nm = oscillator_length_si(si.mass_kg, 2.0 * pi * si.omega_hz) * 1e9;
  si.x0_nm = 5.0 * ax_nm;
  si.a_bb_nm = fig2_a_s_nm;
  si.a_ab_nm = fig2_a_s_nm;
  return to_dimensionless(si);
}

GateSchedule preset_schedule(const std::string& name) {
  if (name != "paper-fig2") throw contract_error("unknown preset: " + name);
  GateSchedule s;
  s.n_periods = 7;
  return s;
}

}  // namespace collgate
