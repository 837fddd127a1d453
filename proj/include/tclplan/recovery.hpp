#pragma once

#include <vector>

#include "tclplan/skorokhod.hpp"

namespace tclplan {

// Exact exponentially weighted control integral over a window:
//   int_0^(to-from) exp(alpha * s) * v(from + s) ds.
double exp_weighted_control_integral(const ControlSignal& v, double from,
                                     double to, double alpha);

// Leading ON time of a window of length `window` that reproduces, at the
// window's end, the state a fractional level v would reach: the ON block
// must carry the same exponentially weighted control integral.
double gamma_upper_from_integral(double weighted_integral, double alpha);
double gamma_upper(const ControlSignal& v, double window_begin, double window,
                   double alpha);

// Trailing ON time for lower-bound windows (OFF first, then ON).
double gamma_lower_from_integral(double weighted_integral, double window,
                                 double alpha);
double gamma_lower(const ControlSignal& v, double window_begin, double window,
                   double alpha);

struct RecoveredWindow {
  double begin = 0.0;
  double length = 0.0;    // min_switch_period, except a shorter final window
  double on_time = 0.0;   // leading (upper) or trailing (lower) ON block
  bool at_upper = true;
  double boundary = 0.0;
};

// Dispatchable day-ahead plan: binary per-load schedules plus diagnostics.
struct Plan {
  std::vector<ControlSignal> controls;   // binary, one per load
  std::vector<Trajectory> trajectories;  // exact states under the schedules
  Trajectory aggregate_power;            // electrical kW on the output grid
  double cost = 0.0;                 // procurement cost of the schedules
  double cost_convexified = 0.0;     // cost of the fractional reference
  double threshold_price = 0.0;
  OnSet on_set;
  double matching_max_deviation = 0.0;  // degC, over all window ends
  std::vector<double> excursion_bounds;  // per load, one-window overshoot
  std::vector<std::vector<RecoveredWindow>> windows;  // per load
};

// Replaces each boundary-holding episode of the fractional solution with
// ON/OFF windows of length `min_switch_period` (a shorter final window close
// to the episode end).  Upper-bound windows begin ON, lower-bound windows
// end ON; the ON times match the weighted control integral window by window,
// so the binary state re-joins the boundary at every window end.
Plan recover_binary(const ConstrainedSolution& sol, const Population& pop,
                    const ForecastSeries& price, const ForecastSeries& ambient,
                    double min_switch_period, double grid_step);

// Max over loads and windows of |binary state - held boundary| at window
// ends, re-simulated exactly and chained across windows.
double verify_matching(const Plan& plan, const ConstrainedSolution& sol,
                       const Population& pop, const ForecastSeries& ambient);

}  // namespace tclplan
