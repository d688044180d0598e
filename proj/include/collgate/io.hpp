#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include "collgate/basis.hpp"
#include "collgate/fidelity.hpp"
#include "collgate/observables.hpp"

namespace collgate {

inline constexpr const char* csv_schema_version = "collgate-csv-1";

std::string format_g15(double v);  // %.15g, locale-independent

// trajectory CSV: t_over_Tosc, norm, re_O0, im_O0, abs_O, phase_coll_rad
void write_trajectory_csv(std::ostream& out, const OverlapSeries& s);
void write_trajectory_csv(const std::string& path, const OverlapSeries& s);

struct RunSummary {
  double phi_coll = 0;
  double phi_a = 0;
  double phi_b = 0;
  double o0_abs = 0;
  double o_abs = 0;
  std::vector<std::string> flags;
};

void write_summary_json(std::ostream& out, const RunSummary& s);
void write_summary_json(const std::string& path, const RunSummary& s);

// fidelity CSV: kT_over_hw0, gamma, F_full, F_expansion
void write_fidelity_csv(std::ostream& out, const std::vector<FidelityRow>& rows);
void write_fidelity_csv(const std::string& path, const std::vector<FidelityRow>& rows);

void write_fidelity_report_json(std::ostream& out, const FidelityReport& r);
void write_fidelity_report_json(const std::string& path, const FidelityReport& r);

// mode coefficients as {"n_max": ..., "re": [...], "im": [...]}
void write_coeffs_json(std::ostream& out, const ModeCoefficients& c);
ModeCoefficients read_coeffs_json(std::istream& in, const OscillatorBasis& basis);

// machine-readable error object for the CLI's standard error stream
std::string error_json(const std::string& kind, const std::string& message);

}  // namespace collgate
