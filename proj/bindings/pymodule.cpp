#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "collgate/analytic.hpp"
#include "collgate/dynamics.hpp"
#include "collgate/fidelity.hpp"
#include "collgate/model.hpp"
#include "collgate/observables.hpp"
#include "collgate/trapfield.hpp"

namespace py = pybind11;
using namespace collgate;

namespace {

py::dict series_to_dict(const OverlapSeries& s) {
  py::dict d;
  d["t_over_tosc"] = s.t_over_tosc;
  d["o0"] = s.o0;
  d["o_init"] = s.o_init;
  d["norm"] = s.norms;
  d["phase_coll"] = s.phase_coll;
  d["flags"] = s.flags;
  return d;
}

}  // namespace

PYBIND11_MODULE(_collgate, m) {
  m.doc() = "collisional phase-gate dynamics of neutral atoms in switched microtraps";

  py::class_<TrapParams>(m, "TrapParams")
      .def(py::init<>())
      .def_readwrite("omega0", &TrapParams::omega0)
      .def_readwrite("omega", &TrapParams::omega)
      .def_readwrite("omega_perp", &TrapParams::omega_perp)
      .def_readwrite("x0", &TrapParams::x0)
      .def_readwrite("a_bb", &TrapParams::a_bb)
      .def_readwrite("a_ab", &TrapParams::a_ab)
      .def("validate", &TrapParams::validate)
      .def("ground_state_well_overlap", &TrapParams::ground_state_well_overlap);

  py::class_<GateSchedule>(m, "GateSchedule")
      .def(py::init<>())
      .def_readwrite("n_periods", &GateSchedule::n_periods)
      .def_readwrite("use_shifted_period", &GateSchedule::use_shifted_period)
      .def_readwrite("period_shift", &GateSchedule::period_shift)
      .def("tau", &GateSchedule::tau)
      .def("tau_over_tosc", &GateSchedule::tau_over_tosc);

  m.attr("T_OSC") = t_osc;
  m.def("preset", &preset, py::arg("name"));
  m.def("preset_schedule", &preset_schedule, py::arg("name"));

  m.def(
      "simulate_bb",
      [](const TrapParams& p, const GateSchedule& s, int n_max) {
        OverlapSeries series;
        {
          // GIL released for the propagation only; dict assembly needs it back
          py::gil_scoped_release release;
          SameStateTrajectory t = propagate_same(initial_coeffs_same(p, n_max), p, s);
          series = overlap_series(t);
        }
        return series_to_dict(series);
      },
      py::arg("params"), py::arg("schedule"), py::arg("n_max") = 60);

  m.def(
      "simulate_ab",
      [](const TrapParams& p, const GateSchedule& s, int n_max) {
        OverlapSeries series;
        {
          py::gil_scoped_release release;
          DiffStateTrajectory t = propagate_diff(initial_coeffs_diff(p, n_max, n_max), p, s);
          TrapParams fp = p;
          fp.a_ab = 0.0;
          DiffStateTrajectory ft = propagate_diff(initial_coeffs_diff(fp, n_max, n_max), fp, s);
          series = overlap_series(t, ft);
        }
        return series_to_dict(series);
      },
      py::arg("params"), py::arg("schedule"), py::arg("n_max") = 40);

  m.def("breathing_width", &breathing_width);
  m.def("cm_overlap_sq", &cm_overlap_sq);
  m.def("rel_overlap_free_sq", &rel_overlap_free_sq);
  m.def("rel_overlap_free", &rel_overlap_free);
  m.def("energy_shift_bb", &energy_shift_bb);
  m.def("perturbative_phase_period", &perturbative_phase_period);
  m.def("perturbative_phase_excited", &perturbative_phase_excited);
  m.def("constant_velocity_phase", &constant_velocity_phase);
  m.def("kinematic_phase_a", &kinematic_phase_a);
  m.def("kinematic_phase_b", &kinematic_phase_b);

  m.def("fidelity_full", &fidelity_full);
  m.def("fidelity_simple", &fidelity_simple);
  m.def("thermal_weights", &thermal_weights);

  py::class_<MirrorParams>(m, "MirrorParams")
      .def(py::init<>())
      .def_readwrite("m0", &MirrorParams::m0)
      .def_readwrite("k_m", &MirrorParams::k_m)
      .def_readwrite("delta", &MirrorParams::delta)
      .def_readwrite("b_ext_y", &MirrorParams::b_ext_y)
      .def_readwrite("b_ext_z", &MirrorParams::b_ext_z)
      .def_readwrite("g_f", &MirrorParams::g_f)
      .def_readwrite("m_f", &MirrorParams::m_f)
      .def("b0", &MirrorParams::b0);
  m.def("magnetic_potential", &magnetic_potential);
  m.def("trap_height", &trap_height);
}
