#include <algorithm>
#include <atomic>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "collgate/analytic.hpp"
#include "collgate/dynamics.hpp"
#include "collgate/errors.hpp"
#include "collgate/fidelity.hpp"
#include "collgate/io.hpp"
#include "collgate/model.hpp"
#include "collgate/observables.hpp"
#include "collgate/trapfield.hpp"
#include "collgate/validation.hpp"

namespace fs = std::filesystem;
using namespace collgate;

namespace {

struct GlobalOpts {
  std::string config;
  std::string preset_name = "paper-fig2";
  std::string out_dir;
  int jobs = 1;
};

struct ParamOverrides {
  double a_bb = -1e300, a_ab = -1e300, x0 = -1e300, omega0 = -1e300, omega_perp = -1e300;
  int n_periods = -1;
  double period_shift = -1e300;
  int n_max = -1;  // default depends on the channel

  int basis_size(StatePair pair) const {
    if (n_max > 0) return n_max;
    return (pair == StatePair::ab) ? 40 : 60;
  }

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--a-bb", a_bb, "bb scattering length, units of a_x");
    cmd->add_option("--a-ab", a_ab, "ab scattering length, units of a_x");
    cmd->add_option("--x0", x0, "half well separation, units of a_x");
    cmd->add_option("--omega0", omega0, "separated-well frequency, units of omega");
    cmd->add_option("--omega-perp", omega_perp, "transverse frequency, units of omega");
    cmd->add_option("--n-periods", n_periods, "gate duration in oscillation periods");
    cmd->add_option("--period-shift", period_shift, "fractional period correction delta_t/T_osc");
    cmd->add_option("--n-max", n_max, "oscillator basis size");
  }

  RunInput resolve(const GlobalOpts& g) const {
    RunInput in;
    if (!g.config.empty()) {
      in = load_config_file(g.config);
    } else {
      in.params = preset(g.preset_name);
      in.schedule = preset_schedule(g.preset_name);
    }
    if (a_bb != -1e300) in.params.a_bb = a_bb;
    if (a_ab != -1e300) in.params.a_ab = a_ab;
    if (x0 != -1e300) in.params.x0 = x0;
    if (omega0 != -1e300) in.params.omega0 = omega0;
    if (omega_perp != -1e300) in.params.omega_perp = omega_perp;
    if (n_periods > 0) in.schedule.n_periods = n_periods;
    if (period_shift != -1e300) {
      in.schedule.use_shifted_period = true;
      in.schedule.period_shift = period_shift;
    }
    in.params.validate();
    in.schedule.check();
    return in;
  }
};

fs::path output_dir(const GlobalOpts& g) {
  std::string dir = g.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("COLLGATE_OUT");
    dir = env ? env : ".";
  }
  fs::create_directories(dir);
  return dir;
}

// kinematic phases: closed forms at integer periods, otherwise split the
// measured total phase evenly between the two atoms
void fill_kinematic(const TrapParams& p, const GateSchedule& s, StatePair pair,
                    const OverlapSeries& series, RunSummary& sum) {
  if (!s.use_shifted_period || s.period_shift == 0.0) {
    sum.phi_a = (pair == StatePair::bb) ? kinematic_phase_b(p, s) : kinematic_phase_a(p, s);
    sum.phi_b = kinematic_phase_b(p, s);
    return;
  }
  double phi_total = std::arg(series.o_init.back()) + 2.0 * p.omega_perp * s.tau();
  double kin = phi_total - series.phase_coll.back();
  sum.phi_a = kin / 2.0;
  sum.phi_b = kin / 2.0;
  sum.flags.push_back("kinematic-phases-from-difference");
}

RunSummary summarize(const TrapParams& p, const GateSchedule& s, StatePair pair,
                     const OverlapSeries& series) {
  RunSummary sum;
  sum.phi_coll = series.phase_coll.back();
  sum.o0_abs = std::abs(series.o0.back());
  sum.o_abs = std::abs(series.o_init.back());
  sum.flags = series.flags;
  fill_kinematic(p, s, pair, series, sum);
  if (max_energy_shift_bb(p) > 0.3) sum.flags.push_back("perturbative-regime-violated");
  if (!s.use_shifted_period || s.period_shift == 0.0) {
    PhaseRecord rec = phase_record(p, s, pair, series);
    if (sum.o_abs > 0.95 && std::abs(phase_decomposition_residual(p, s, rec)) > 1e-2)
      sum.flags.push_back("phase-decomposition-residual");
  }
  return sum;
}

OverlapSeries run_channel(const RunInput& in, StatePair pair, int n_max) {
  if (pair == StatePair::bb) {
    SameStateTrajectory t =
        propagate_same(initial_coeffs_same(in.params, n_max), in.params, in.schedule);
    return overlap_series(t);
  }
  DiffStateTrajectory t = propagate_diff(initial_coeffs_diff(in.params, n_max, n_max),
                                         in.params, in.schedule);
  TrapParams free_p = in.params;
  free_p.a_ab = 0.0;
  DiffStateTrajectory ft = propagate_diff(initial_coeffs_diff(free_p, n_max, n_max),
                                          free_p, in.schedule);
  return overlap_series(t, ft);
}

int cmd_simulate(const GlobalOpts& g, const ParamOverrides& ov, const std::string& mode) {
  RunInput in = ov.resolve(g);
  StatePair pair = (mode == "ab") ? StatePair::ab : StatePair::bb;
  if (mode == "free") {
    in.params.a_bb = 0.0;
    in.params.a_ab = 0.0;
  }
  int n_max = ov.basis_size(pair);
  OverlapSeries series = run_channel(in, pair, n_max);
  RunSummary sum = summarize(in.params, in.schedule, pair, series);
  fs::path dir = output_dir(g);
  write_trajectory_csv((dir / "trajectory.csv").string(), series);
  write_summary_json((dir / "summary.json").string(), sum);
  std::cout << "phi_coll = " << format_g15(sum.phi_coll)
            << " rad, |O0| = " << format_g15(sum.o0_abs)
            << ", |O| = " << format_g15(sum.o_abs) << "\n";
  return 0;
}

int cmd_fidelity(const GlobalOpts& g, const ParamOverrides& ov, double t_max, int t_steps,
                 double phi_ab_override) {
  RunInput in = ov.resolve(g);
  std::vector<ExcitedChannel> per_n(7);
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&]() {
    for (int n; (n = next.fetch_add(1)) < 7;) {
      try {
        SolverSettings fast;
        fast.samples_per_period = 256;
        ModeCoefficients init = excited_relative_coeffs(in.params, n, ov.basis_size(StatePair::bb) + 4 * n);
        SameStateTrajectory t = propagate_same(init, in.params, in.schedule, fast);
        OverlapSeries s = overlap_series(t);
        per_n[n] = {std::abs(s.o0.back()), s.phase_coll.back()};
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  int n_workers = std::max(1, std::min(g.jobs, 7));
  std::vector<std::thread> pool;
  for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);

  FidelityReport rep;
  rep.per_n = per_n;
  rep.phi_bb = per_n[0].phi;
  rep.c = std::sqrt(per_n[0].o0_abs);
  double tau = in.schedule.tau();
  rep.a = std::sqrt(std::abs(rel_overlap_free(in.params, tau) * cm_overlap(in.params, tau)));
  // |O(tau)| of the interacting ground channel, from a dedicated run
  SameStateTrajectory t0 =
      propagate_same(initial_coeffs_same(in.params, ov.basis_size(StatePair::bb)), in.params, in.schedule);
  OverlapSeries s0 = overlap_series(t0);
  rep.b = std::sqrt(std::abs(s0.o_init.back()));
  double phi_bb_eff = rep.phi_bb + 2.0 * phi_ab_override;  // phi_ab shifts the conditional phase
  rep.f0 = fidelity_full(rep.a, rep.b, rep.c, phi_bb_eff);
  for (int i = 0; i <= t_steps; ++i) {
    double kt = t_max * i / std::max(1, t_steps);
    ThermalFidelity tf = fidelity_thermal(per_n, kt);
    rep.table.push_back({kt, tf.gamma, tf.full, tf.expansion});
  }
  fs::path dir = output_dir(g);
  write_fidelity_csv((dir / "fidelity.csv").string(), rep.table);
  write_fidelity_report_json((dir / "fidelity_report.json").string(), rep);
  std::cout << "F0 = " << format_g15(rep.f0) << ", phi_bb = " << format_g15(rep.phi_bb)
            << " rad\n";
  return 0;
}

int cmd_sweep(const GlobalOpts& g, const ParamOverrides& ov, const std::string& axis,
              double from, double to, int steps) {
  static const std::vector<std::string> axes = {"a_bb", "a_ab", "x0", "omega0",
                                                "omega_perp", "n_periods"};
  if (std::find(axes.begin(), axes.end(), axis) == axes.end())
    throw contract_error("unknown sweep axis: " + axis);
  std::vector<double> values(std::max(0, steps));
  for (int i = 0; i < steps; ++i)
    values[i] = (steps == 1) ? from : from + (to - from) * i / (steps - 1);

  struct Row {
    double value;
    RunSummary sum;
  };
  std::vector<Row> rows(values.size());
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&]() {
    for (size_t i; (i = next.fetch_add(1)) < values.size();) {
      try {
        RunInput in = ov.resolve(g);
        double v = values[i];
        if (axis == "a_bb") in.params.a_bb = v;
        else if (axis == "a_ab") in.params.a_ab = v;
        else if (axis == "x0") in.params.x0 = v;
        else if (axis == "omega0") in.params.omega0 = v;
        else if (axis == "omega_perp") in.params.omega_perp = v;
        else in.schedule.n_periods = std::max(1, int(std::lround(v)));
        in.params.validate();
        StatePair pair = (axis == "a_ab") ? StatePair::ab : StatePair::bb;
        int n_max = ov.basis_size(pair);
        OverlapSeries series = run_channel(in, pair, n_max);
        rows[i] = {v, summarize(in.params, in.schedule, pair, series)};
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  int n_workers = std::max(1, std::min<int>(g.jobs, std::max<size_t>(1, values.size())));
  std::vector<std::thread> pool;
  for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);

  fs::path dir = output_dir(g);
  std::ofstream f(dir / "sweep.csv");
  if (!f) throw contract_error("cannot open sweep output");
  f << "# " << csv_schema_version << " sweep axis=" << axis << "\n";
  f << "value, phi_coll_rad, phi_a_rad, phi_b_rad, O0_abs, O_abs, flags\n";
  for (const auto& r : rows) {
    std::string fl;
    for (const auto& s : r.sum.flags) fl += (fl.empty() ? "" : ";") + s;
    f << format_g15(r.value) << ", " << format_g15(r.sum.phi_coll) << ", "
      << format_g15(r.sum.phi_a) << ", " << format_g15(r.sum.phi_b) << ", "
      << format_g15(r.sum.o0_abs) << ", " << format_g15(r.sum.o_abs) << ", " << fl << "\n";
  }
  std::cout << rows.size() << " sweep points written\n";
  return 0;
}

int cmd_validate(bool quick) {
  bool all_pass = true;
  run_validation(quick, [&](const CriterionResult& r) {
    std::cout << (r.passed ? "PASS" : "FAIL") << " " << r.id << " " << r.name << ": "
              << r.detail << "\n"
              << std::flush;
    if (!r.passed) all_pass = false;
  });
  return all_pass ? 0 : 1;
}

int cmd_trapfield(const GlobalOpts& g, const MirrorParams& mp, double mass_kg, int map_n) {
  mp.check();
  double z0 = trap_height(mp);
  std::cout << "B0 = " << format_g15(mp.b0()) << " T, z0 = " << format_g15(z0) << " m\n";
  auto minima = find_minima(mp, mass_kg);
  for (const auto& m : minima)
    std::cout << "minimum at x = " << format_g15(m.x) << " m, z = " << format_g15(m.z)
              << " m: V = " << format_g15(m.potential)
              << " J, f_x = " << format_g15(m.omega_x / (2.0 * pi))
              << " Hz, f_z = " << format_g15(m.omega_z / (2.0 * pi)) << " Hz\n";
  double period = 2.0 * pi / mp.k_m;
  fs::path dir = output_dir(g);
  write_field_map((dir / "fieldmap.csv").string(), mp, 0.0, 2.0 * period, map_n, 0.2 * z0,
                  4.0 * z0, map_n);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collisional phase-gate simulator for neutral atoms in switched microtraps"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config, "JSON parameter file")->expected(1);
  app.add_option("--preset", g.preset_name, "named parameter preset (paper-fig2)");
  app.add_option("--out", g.out_dir, "output directory (default $COLLGATE_OUT or .)");
  app.add_option("--jobs", g.jobs, "max concurrent propagations");

  auto* sim = app.add_subcommand("simulate", "propagate one channel and export overlaps");
  ParamOverrides sim_ov;
  sim_ov.add_flags(sim);
  std::string mode = "bb";
  sim->add_option("--mode", mode, "channel: bb, ab, or free")
      ->check(CLI::IsMember({"bb", "ab", "free"}));

  auto* fid = app.add_subcommand("fidelity", "zero- and finite-temperature gate fidelity");
  ParamOverrides fid_ov;
  fid_ov.add_flags(fid);
  double t_max = 3.0, phi_ab_override = 0.0;
  int t_steps = 12;
  fid->add_option("--t-max", t_max, "largest k_B T / (hbar omega0)");
  fid->add_option("--t-steps", t_steps, "temperature grid intervals");
  fid->add_option("--phi-ab", phi_ab_override,
                  "cross-channel collisional phase (default 0, displaced transverse traps)");

  auto* sw = app.add_subcommand("sweep", "scan one parameter and tabulate observables");
  ParamOverrides sw_ov;
  sw_ov.add_flags(sw);
  std::string axis;
  double from = 0.0, to = 0.0;
  int steps = 0;
  sw->add_option("--axis", axis, "parameter to sweep")->required();
  sw->add_option("--from", from, "first value")->required();
  sw->add_option("--to", to, "last value");
  sw->add_option("--steps", steps, "number of sweep points")->required();

  auto* val = app.add_subcommand("validate", "run the release criteria");
  bool quick = false;
  val->add_flag("--quick", quick, "skip the two long-running criteria");

  auto* tf = app.add_subcommand("trapfield", "magnetic-mirror trap landscape");
  MirrorParams mp;
  mp.m0 = 4.0e3;
  mp.k_m = 2.0 * pi / 1.0e-6;
  mp.delta = 5.0e-6;
  mp.b_ext_y = 1.0e-4;
  mp.b_ext_z = 2.0e-4;
  double mass_kg = 1.44316060e-25;
  int map_n = 64;
  tf->add_option("--m0", mp.m0, "magnetization amplitude, A/m");
  tf->add_option("--k", mp.k_m, "magnetization wavenumber, rad/m");
  tf->add_option("--delta", mp.delta, "tape thickness, m");
  tf->add_option("--by", mp.b_ext_y, "bias field along y, T");
  tf->add_option("--bz", mp.b_ext_z, "bias field along z, T");
  tf->add_option("--gf", mp.g_f, "Lande factor");
  tf->add_option("--mf", mp.m_f, "magnetic quantum number");
  tf->add_option("--mass", mass_kg, "atom mass, kg");
  tf->add_option("--map-points", map_n, "field-map resolution per axis");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(g, sim_ov, mode);
    if (fid->parsed()) return cmd_fidelity(g, fid_ov, t_max, t_steps, phi_ab_override);
    if (sw->parsed()) return cmd_sweep(g, sw_ov, axis, from, to, steps);
    if (val->parsed()) return cmd_validate(quick);
    if (tf->parsed()) return cmd_trapfield(g, mp, mass_kg, map_n);
  } catch (const contract_error& e) {
    std::cerr << error_json("contract", e.what()) << "\n";
    return 2;
  } catch (const truncation_error& e) {
    std::cerr << error_json("truncation", e.what()) << "\n";
    return 4;
  } catch (const solver_error& e) {
    std::cerr << error_json("solver", e.what()) << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << error_json("internal", e.what()) << "\n";
    return 1;
  }
  return 0;
}
