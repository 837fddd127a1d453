#pragma once

#include <optional>
#include <vector>

#include "tclplan/model.hpp"
#include "tclplan/step_series.hpp"
#include "tclplan/trajectory.hpp"

namespace tclplan {

// One exact step of the indoor-temperature dynamics
//   dtheta/dt = -alpha * (theta - ambient) - beta * P * u
// under constant ambient and control level u over dt seconds:
// closed-form relaxation toward the steady state, no discretization error.
double step_exact(const TclParams& p, double theta, double ambient, double u,
                  double dt);

// First time >= 0 at which the trajectory from theta reaches target under
// constant ambient and control level u, if it ever does.  The motion is a
// monotone relaxation toward the steady state, so the crossing is unique.
std::optional<double> crossing_time(const TclParams& p, double theta,
                                    double ambient, double u, double target);

// Exact state at time `to` starting from `theta` at time `from` under the
// given ambient and control series; every breakpoint in between is honored.
double advance_exact(const TclParams& p, const ForecastSeries& ambient,
                     const ControlSignal& control, double theta, double from,
                     double to);

// Exact trajectory under an externally prescribed control signal.  Every
// ambient and control breakpoint is honored exactly; grid samples are exact
// state values, not integrator output.
Trajectory simulate_with_control(const TclParams& p,
                                 const ForecastSeries& ambient,
                                 const ControlSignal& control,
                                 double grid_step);

struct HystereticResult {
  Trajectory trajectory;
  ControlSignal control;  // realized mode; switch times are exact
};

// Autonomous thermostat run: the mode switches ON exactly when the state
// reaches the upper comfort bound and OFF at the lower bound, otherwise it
// holds.  Requires a cooling scenario (no ambient value strictly below the
// upper bound); ambient exactly at the upper bound yields an asymptotic
// approach and the run simply continues to the horizon.
HystereticResult simulate_hysteretic(const TclParams& p,
                                     const ForecastSeries& ambient,
                                     double grid_step);

struct SlideEpisode {
  double begin = 0.0;
  double end = 0.0;
  bool at_upper = true;
  double boundary = 0.0;  // temperature held during the episode
};

struct ReflectedResult {
  Trajectory trajectory;
  ControlSignal effective_control;  // fractional while holding a boundary
  std::vector<SlideEpisode> episodes;
};

// Integrates the same dynamics but keeps the state inside the comfort band:
// whenever the base control would push the state past a bound, the control
// takes the unique level that holds the boundary (upper bound with base OFF,
// lower bound with base ON); elsewhere the base control applies unchanged.
// Boundary-hit times are resolved exactly.  Throws SlidingInfeasibleError
// when holding a boundary would need a control level outside [0, 1].
ReflectedResult simulate_reflected(const TclParams& p,
                                   const ForecastSeries& ambient,
                                   const ControlSignal& base,
                                   double grid_step);

}  // namespace tclplan
