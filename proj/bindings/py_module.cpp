#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tclplan/csv_io.hpp"
#include "tclplan/dynamics.hpp"
#include "tclplan/errors.hpp"
#include "tclplan/feasibility.hpp"
#include "tclplan/model.hpp"
#include "tclplan/pipeline.hpp"
#include "tclplan/recovery.hpp"
#include "tclplan/skorokhod.hpp"
#include "tclplan/step_series.hpp"
#include "tclplan/synth.hpp"
#include "tclplan/threshold.hpp"
#include "tclplan/trajectory.hpp"

namespace py = pybind11;

using namespace tclplan;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Day-ahead planner for populations of thermostatically controlled "
      "loads";

  const auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", base);
  py::register_exception<InfeasibleBudgetError>(m, "InfeasibleBudgetError",
                                                base);
  py::register_exception<SlidingInfeasibleError>(m, "SlidingInfeasibleError",
                                                 base);

  py::class_<StepSeries>(m, "StepSeries",
                         "Right-continuous piecewise-constant series on "
                         "[0, horizon]")
      .def(py::init<std::vector<double>, std::vector<double>>(),
           py::arg("breakpoints"), py::arg("values"))
      .def_static("constant", &StepSeries::constant, py::arg("horizon"),
                  py::arg("value"))
      .def_property_readonly("breakpoints", &StepSeries::breakpoints)
      .def_property_readonly("values", &StepSeries::values)
      .def("horizon", &StepSeries::horizon)
      .def("value", &StepSeries::value, py::arg("t"))
      .def("integral", py::overload_cast<>(&StepSeries::integral, py::const_))
      .def("integral_range",
           py::overload_cast<double, double>(&StepSeries::integral,
                                             py::const_),
           py::arg("a"), py::arg("b"))
      .def("time_average", &StepSeries::time_average)
      .def("min_value", &StepSeries::min_value)
      .def("max_value", &StepSeries::max_value);

  py::class_<TclParams>(m, "TclParams")
      .def(py::init<>())
      .def_readwrite("alpha", &TclParams::alpha)
      .def_readwrite("beta", &TclParams::beta)
      .def_readwrite("power_thermal", &TclParams::power_thermal)
      .def_readwrite("efficiency", &TclParams::efficiency)
      .def_readwrite("setpoint", &TclParams::setpoint)
      .def_readwrite("delta", &TclParams::delta)
      .def_readwrite("theta0", &TclParams::theta0)
      .def_readwrite("sigma0", &TclParams::sigma0)
      .def("lower_bound", &TclParams::lower_bound)
      .def("upper_bound", &TclParams::upper_bound)
      .def("electrical_power", &TclParams::electrical_power)
      .def("steady_state", &TclParams::steady_state, py::arg("ambient"),
           py::arg("u"));

  py::class_<Population>(m, "Population")
      .def(py::init<>())
      .def_readwrite("loads", &Population::loads)
      .def("size", &Population::size)
      .def("shared_thermal_power", &Population::shared_thermal_power)
      .def("shared_efficiency", &Population::shared_efficiency)
      .def("shared_electrical_power", &Population::shared_electrical_power);

  py::class_<EnergyBudget>(m, "EnergyBudget")
      .def_readonly("energy_kwh", &EnergyBudget::energy_kwh)
      .def_readonly("tau_load_seconds", &EnergyBudget::tau_load_seconds)
      .def_readonly("tau_bar", &EnergyBudget::tau_bar)
      .def_static("from_energy_kwh", &EnergyBudget::from_energy_kwh,
                  py::arg("kwh"), py::arg("population"), py::arg("horizon"))
      .def_static("from_tau_bar", &EnergyBudget::from_tau_bar,
                  py::arg("tau_bar"), py::arg("population"),
                  py::arg("horizon"));

  py::class_<FeasibilityBounds>(m, "FeasibilityBounds")
      .def_readonly("tau_bar_lower", &FeasibilityBounds::tau_bar_lower)
      .def_readonly("tau_bar_upper", &FeasibilityBounds::tau_bar_upper)
      .def_readonly("energy_lower_kwh", &FeasibilityBounds::energy_lower_kwh)
      .def_readonly("energy_upper_kwh", &FeasibilityBounds::energy_upper_kwh)
      .def_readonly("upper_exceeds_one",
                    &FeasibilityBounds::upper_exceeds_one)
      .def("tau_bar_upper_effective",
           &FeasibilityBounds::tau_bar_upper_effective);

  py::class_<FeasibilityVerdict>(m, "FeasibilityVerdict")
      .def_readonly("feasible", &FeasibilityVerdict::feasible)
      .def_readonly("reason", &FeasibilityVerdict::reason);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("dt", &Trajectory::dt)
      .def_readonly("values", &Trajectory::values)
      .def("time", &Trajectory::time, py::arg("k"))
      .def("horizon", &Trajectory::horizon);

  py::class_<Interval>(m, "Interval")
      .def_readonly("begin", &Interval::begin)
      .def_readonly("end", &Interval::end)
      .def("length", &Interval::length);

  py::class_<OnSet>(m, "OnSet")
      .def_property_readonly("intervals", &OnSet::intervals)
      .def("measure", &OnSet::measure)
      .def("contains", &OnSet::contains, py::arg("t"))
      .def("indicator", &OnSet::indicator, py::arg("horizon"));

  py::class_<ThresholdSolution>(m, "ThresholdSolution")
      .def_readonly("threshold_price", &ThresholdSolution::threshold_price)
      .def_readonly("on_set", &ThresholdSolution::on_set)
      .def_readonly("control", &ThresholdSolution::control)
      .def_readonly("states", &ThresholdSolution::states)
      .def_readonly("time_adjoint", &ThresholdSolution::time_adjoint)
      .def_readonly("energy_adjoint", &ThresholdSolution::energy_adjoint)
      .def_readonly("cost", &ThresholdSolution::cost);

  py::class_<SlideEpisode>(m, "SlideEpisode")
      .def_readonly("begin", &SlideEpisode::begin)
      .def_readonly("end", &SlideEpisode::end)
      .def_readonly("at_upper", &SlideEpisode::at_upper)
      .def_readonly("boundary", &SlideEpisode::boundary);

  py::class_<ConstrainedSolution>(m, "ConstrainedSolution")
      .def_readonly("threshold_price", &ConstrainedSolution::threshold_price)
      .def_readonly("on_set", &ConstrainedSolution::on_set)
      .def_readonly("base_control", &ConstrainedSolution::base_control)
      .def_readonly("states", &ConstrainedSolution::states)
      .def_readonly("convex_controls", &ConstrainedSolution::convex_controls)
      .def_readonly("episodes", &ConstrainedSolution::episodes)
      .def_readonly("cost", &ConstrainedSolution::cost);

  py::class_<RecoveredWindow>(m, "RecoveredWindow")
      .def_readonly("begin", &RecoveredWindow::begin)
      .def_readonly("length", &RecoveredWindow::length)
      .def_readonly("on_time", &RecoveredWindow::on_time)
      .def_readonly("at_upper", &RecoveredWindow::at_upper)
      .def_readonly("boundary", &RecoveredWindow::boundary);

  py::class_<Plan>(m, "Plan")
      .def_readonly("controls", &Plan::controls)
      .def_readonly("trajectories", &Plan::trajectories)
      .def_readonly("aggregate_power", &Plan::aggregate_power)
      .def_readonly("cost", &Plan::cost)
      .def_readonly("cost_convexified", &Plan::cost_convexified)
      .def_readonly("threshold_price", &Plan::threshold_price)
      .def_readonly("on_set", &Plan::on_set)
      .def_readonly("matching_max_deviation",
                    &Plan::matching_max_deviation)
      .def_readonly("excursion_bounds", &Plan::excursion_bounds);

  py::class_<SynthConfig>(m, "SynthConfig")
      .def(py::init<>())
      .def_readwrite("alpha_min", &SynthConfig::alpha_min)
      .def_readwrite("alpha_max", &SynthConfig::alpha_max)
      .def_readwrite("beta_min", &SynthConfig::beta_min)
      .def_readwrite("beta_max", &SynthConfig::beta_max)
      .def_readwrite("setpoint_min", &SynthConfig::setpoint_min)
      .def_readwrite("setpoint_max", &SynthConfig::setpoint_max)
      .def_readwrite("delta_min", &SynthConfig::delta_min)
      .def_readwrite("delta_max", &SynthConfig::delta_max)
      .def_readwrite("power_thermal", &SynthConfig::power_thermal)
      .def_readwrite("efficiency", &SynthConfig::efficiency);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("price_path", &RunConfig::price_path)
      .def_readwrite("ambient_path", &RunConfig::ambient_path)
      .def_readwrite("population_path", &RunConfig::population_path)
      .def_readwrite("output_dir", &RunConfig::output_dir)
      .def_readwrite("horizon", &RunConfig::horizon)
      .def_readwrite("grid_step", &RunConfig::grid_step)
      .def_readwrite("energy_budget_kwh", &RunConfig::energy_budget_kwh)
      .def_readwrite("tau_bar", &RunConfig::tau_bar)
      .def_readwrite("min_switch_period", &RunConfig::min_switch_period)
      .def_readwrite("synth_count", &RunConfig::synth_count)
      .def_readwrite("seed", &RunConfig::seed);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("horizon", &RunResult::horizon)
      .def_readonly("budget", &RunResult::budget)
      .def_readonly("bounds", &RunResult::bounds)
      .def_readonly("relaxed", &RunResult::relaxed)
      .def_readonly("constrained", &RunResult::constrained)
      .def_readonly("plan", &RunResult::plan);

  py::class_<RunArtifacts>(m, "RunArtifacts")
      .def_readonly("population", &RunArtifacts::population)
      .def_readonly("result", &RunArtifacts::result);

  m.def("validate_population",
        [](const Population& pop, const StepSeries& ambient) {
          return validate_population(pop, ambient).violations;
        },
        py::arg("population"), py::arg("ambient"),
        "Returns the list of constraint violations (empty when valid)");
  m.def("mean_ambient", &mean_ambient, py::arg("ambient"));
  m.def("tau_bounds", &tau_bounds, py::arg("population"), py::arg("ambient"));
  m.def("check_feasible", &check_feasible, py::arg("budget"),
        py::arg("bounds"));
  m.def("format_feasibility_report", &format_feasibility_report,
        py::arg("population"), py::arg("horizon"), py::arg("bounds"));

  m.def("step_exact", &step_exact, py::arg("params"), py::arg("theta"),
        py::arg("ambient"), py::arg("u"), py::arg("dt"),
        "One exact step of the first-order thermal dynamics");
  m.def("simulate_with_control", &simulate_with_control, py::arg("params"),
        py::arg("ambient"), py::arg("control"), py::arg("grid_step"));
  m.def("simulate_hysteretic", [](const TclParams& p,
                                  const StepSeries& ambient,
                                  double grid_step) {
          const HystereticResult r = simulate_hysteretic(p, ambient,
                                                         grid_step);
          return py::make_tuple(r.trajectory, r.control);
        },
        py::arg("params"), py::arg("ambient"), py::arg("grid_step"),
        "Default thermostat cycling; returns (trajectory, control)");

  m.def("occupancy", &occupancy, py::arg("price"), py::arg("level"));
  m.def("threshold_price", &threshold_price, py::arg("price"),
        py::arg("tau_per_load"));
  m.def("cheapest_on_set", &cheapest_on_set, py::arg("price"),
        py::arg("tau_per_load"));
  m.def("procurement_cost", &procurement_cost, py::arg("price"),
        py::arg("control"), py::arg("electrical_kw"));
  m.def("solve_unconstrained", &solve_unconstrained, py::arg("population"),
        py::arg("price"), py::arg("ambient"), py::arg("budget"),
        py::arg("grid_step"));

  m.def("skorokhod_one_sided",
        [](const std::vector<double>& y, double lower) {
          return skorokhod_one_sided(
              std::span<const double>(y.data(), y.size()), lower);
        },
        py::arg("samples"), py::arg("lower"));
  m.def("skorokhod_two_sided",
        [](const std::vector<double>& y, double lower, double upper) {
          return skorokhod_two_sided(
              std::span<const double>(y.data(), y.size()), lower, upper);
        },
        py::arg("samples"), py::arg("lower"), py::arg("upper"));
  m.def("solve_constrained", &solve_constrained, py::arg("base"),
        py::arg("population"), py::arg("price"), py::arg("ambient"),
        py::arg("grid_step"));

  m.def("recover_binary", &recover_binary, py::arg("solution"),
        py::arg("population"), py::arg("price"), py::arg("ambient"),
        py::arg("min_switch_period"), py::arg("grid_step"));
  m.def("verify_matching", &verify_matching, py::arg("plan"),
        py::arg("solution"), py::arg("population"), py::arg("ambient"));

  m.def("synth_population", &synth_population, py::arg("count"),
        py::arg("seed"), py::arg("config") = SynthConfig{});

  m.def("load_price_csv", &load_price_csv, py::arg("path"));
  m.def("load_ambient_csv", &load_ambient_csv, py::arg("path"));
  m.def("load_population_json", &load_population_json, py::arg("path"));
  m.def("save_population_json", &save_population_json, py::arg("population"),
        py::arg("path"));

  m.def("run_plan", &run_plan, py::arg("population"), py::arg("price"),
        py::arg("ambient"), py::arg("config"),
        "Planning core on in-memory inputs");
  m.def("run_plan_files", &run_plan_files, py::arg("config"),
        "File-level planning entry; writes outputs when output_dir is set");
  m.def("format_plan_report", &format_plan_report, py::arg("population"),
        py::arg("result"));
  m.def("write_plan_outputs", &write_plan_outputs, py::arg("population"),
        py::arg("result"), py::arg("dir"));
}
