#pragma once
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace collgate {

inline constexpr double hbar_si = 1.054571817e-34;  // J s
inline constexpr double kb_si = 1.380649e-23;       // J/K
inline constexpr double pi = 3.141592653589793238462643383279502884;

// internal units: hbar = m = omega = 1, lengths in a_x = sqrt(hbar/(m omega))
inline constexpr double t_osc = 2.0 * pi;

enum class StatePair { bb, ab };

// SI-side trap description; frequencies are ordinary frequencies in Hz
struct SiParams {
  double mass_kg = 0;
  double omega_hz = 0;       // merged-well trap frequency
  double omega0_hz = 0;      // separated-well frequency
  double omega_perp_hz = 0;  // transverse frequency
  double x0_nm = 0;          // half separation of well centers
  double a_bb_nm = 0;
  double a_ab_nm = 0;
};

struct TrapParams {
  double omega0 = 2.0;      // separated-well frequency, units of omega
  double omega = 1.0;       // merged-well frequency, fixed to 1 internally
  double omega_perp = 0.0;  // transverse frequency, units of omega
  double x0 = 0.0;          // half separation, units of a_x
  double a_bb = 0.0;        // scattering lengths, units of a_x
  double a_ab = 0.0;
  std::optional<double> mass_si;   // kg
  std::optional<double> omega_si;  // rad/s

  // throws on hard invariant violations, returns soft warnings
  std::vector<std::string> validate() const;
  double ground_state_well_overlap() const;  // exp(-omega0 x0^2)
  bool has_si_anchors() const { return mass_si && omega_si; }
};

struct GateSchedule {
  int n_periods = 7;
  bool use_shifted_period = false;
  double period_shift = 0.0;  // measured delta_t in units of T_osc

  double tau_over_tosc() const;
  double tau() const;  // internal time units
  void check() const;  // throws contract_error on invalid combinations
};

double oscillator_length_si(double mass_kg, double omega_rad_s);  // meters

TrapParams to_dimensionless(const SiParams& si);
SiParams to_si(const TrapParams& p);  // requires SI anchors

// g = 2 a_s omega_perp in units of hbar omega a_x; warning appended for a_s < 0
double effective_1d_coupling(const TrapParams& p, StatePair pair,
                             std::vector<std::string>* warnings = nullptr);

// double half-parabola with minima at +-x0 (separated-well potential)
double potential_va(const TrapParams& p, double x);
// merged omega-well inside [0, tau], v_a outside
double potential_vb(const TrapParams& p, double x, double t, const GateSchedule& s);

struct RunInput {
  TrapParams params;
  GateSchedule schedule;
};

RunInput load_config(std::istream& in);
RunInput load_config_file(const std::string& path);
TrapParams preset(const std::string& name);  // "paper-fig2"
GateSchedule preset_schedule(const std::string& name);

}  // namespace collgate
