#pragma once

#include <string>

#include "tclplan/model.hpp"
#include "tclplan/step_series.hpp"

namespace tclplan {

// Closed-form bounds on the normalized energy budget tau_bar = tau / (N*T).
//
// The lower bound is the average ON fraction needed to keep every load
// pinned at its upper comfort bound for the whole horizon; the upper bound
// is the same quantity for the lower comfort bound.  Both depend on the
// ambient forecast only through its time average.
struct FeasibilityBounds {
  double tau_bar_lower = 0.0;
  double tau_bar_upper = 0.0;  // raw value; may exceed 1
  double energy_lower_kwh = 0.0;
  double energy_upper_kwh = 0.0;  // raw value matching tau_bar_upper
  bool upper_exceeds_one = false;

  // Instantaneous boundary-holding control levels over loads and time,
  // reported as a diagnostic: the closed-form bounds use the mean ambient,
  // so transiently hot hours can still make holding infeasible.
  double hold_upper_level_min = 0.0;
  double hold_upper_level_max = 0.0;
  double hold_lower_level_min = 0.0;
  double hold_lower_level_max = 0.0;

  double tau_bar_upper_effective() const {
    return tau_bar_upper < 1.0 ? tau_bar_upper : 1.0;
  }
};

double mean_ambient(const ForecastSeries& ambient);

FeasibilityBounds tau_bounds(const Population& pop,
                             const ForecastSeries& ambient);

struct FeasibilityVerdict {
  bool feasible = false;
  std::string reason;  // names the violated bound when infeasible
};

FeasibilityVerdict check_feasible(const EnergyBudget& budget,
                                  const FeasibilityBounds& bounds);

// Key/value text block suitable for terminal output.
std::string format_feasibility_report(const Population& pop, double horizon,
                                      const FeasibilityBounds& bounds);

}  // namespace tclplan
