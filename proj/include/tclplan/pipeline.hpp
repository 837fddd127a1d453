#pragma once

#include <cstdint>
#include <string>

#include "tclplan/feasibility.hpp"
#include "tclplan/model.hpp"
#include "tclplan/recovery.hpp"
#include "tclplan/skorokhod.hpp"
#include "tclplan/step_series.hpp"
#include "tclplan/threshold.hpp"

namespace tclplan {

// Configuration of one planning run.  Exactly one of energy_budget_kwh and
// tau_bar must be non-negative.  horizon = 0 means "infer from the input
// series"; a positive value must match them.
struct RunConfig {
  std::string price_path;
  std::string ambient_path;
  std::string population_path;
  std::string output_dir;  // empty: compute only, write nothing

  double horizon = 0.0;            // s
  double grid_step = 60.0;         // s, output sampling
  double energy_budget_kwh = -1.0; // electrical energy E
  double tau_bar = -1.0;           // normalized ON-time budget
  double min_switch_period = 90.0; // s, duty-cycle window length

  // When synth_count > 0 the population is generated instead of read.
  std::size_t synth_count = 0;
  std::uint64_t seed = 1;
};

// Everything one run produces, stage by stage.
struct RunResult {
  double horizon = 0.0;
  EnergyBudget budget;
  FeasibilityBounds bounds;
  ThresholdSolution relaxed;
  ConstrainedSolution constrained;
  Plan plan;
};

// Planning core on in-memory inputs: validate, budget, feasibility check,
// threshold solve, comfort-constrained solve, duty-cycle recovery.  Throws
// InputError / InfeasibleBudgetError with a stage prefix on the message.
RunResult run_plan(const Population& pop, const ForecastSeries& price,
                   const ForecastSeries& ambient, const RunConfig& config);

// File-level entry: loads the inputs named by config (or synthesizes the
// population), runs the core, and writes the output bundle when output_dir
// is set.  Returns the result together with the population used.
struct RunArtifacts {
  Population population;
  RunResult result;
};
RunArtifacts run_plan_files(const RunConfig& config);

// Key/value text block: threshold price, ON-set intervals, budget and
// feasibility numbers, both costs, matching deviation, excursion bounds.
std::string format_plan_report(const Population& pop, const RunResult& r);

// Writes plan_aggregate.csv, plan_controls.csv, plan_trajectories.csv and
// plan_report into `dir`, creating it if needed.  Byte-identical for
// identical inputs.
void write_plan_outputs(const Population& pop, const RunResult& r,
                        const std::string& dir);

}  // namespace tclplan
