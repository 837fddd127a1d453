#pragma once

#include <span>
#include <vector>

#include "tclplan/dynamics.hpp"
#include "tclplan/model.hpp"
#include "tclplan/step_series.hpp"
#include "tclplan/threshold.hpp"
#include "tclplan/trajectory.hpp"

namespace tclplan {

// One-sided reflection keeping the path at or above `lower`:
//   z(t) = y(t) + max over s <= t of (lower - y(s))^+ .
std::vector<double> skorokhod_one_sided(std::span<const double> y,
                                        double lower);

// Two-sided reflection into [lower, upper]: the one-sided lift composed with
// the upper-regulation map
//   z(t) = phi(t) - sup_{s<=t} min( (phi(s)-upper)^+ ,
//                                   inf_{s<=r<=t} (phi(r)-lower) ).
// The sup/inf collapses to an exact per-sample recursion, so the evaluation
// is linear time; a literal quadratic transcription backs it in the tests.
std::vector<double> skorokhod_two_sided(std::span<const double> y,
                                        double lower, double upper);

Trajectory skorokhod_one_sided(const Trajectory& y, double lower);
Trajectory skorokhod_two_sided(const Trajectory& y, double lower,
                               double upper);

// Driving path whose two-sided reflection reproduces a boundary-held
// trajectory: starts at the held path's initial state and accumulates the
// unconstrained one-step increments evaluated along it.  This is the input
// path of the reflection problem the held trajectory solves, and it is the
// object the reflection map is cross-validated against.
Trajectory driving_path(const TclParams& p, const ForecastSeries& ambient,
                        const ControlSignal& base, const Trajectory& held);

// Comfort-constrained relaxed optimum: every load keeps the synchronized
// threshold control off-boundary and holds a comfort bound with the unique
// fractional level while the unconstrained motion would exit the band.
struct ConstrainedSolution {
  double threshold_price = 0.0;
  OnSet on_set;
  ControlSignal base_control;               // shared binary threshold control
  std::vector<Trajectory> states;           // per-load band-held trajectories
  std::vector<ControlSignal> convex_controls;  // fractional on boundaries
  std::vector<std::vector<SlideEpisode>> episodes;
  double cost = 0.0;  // procurement cost of the convexified controls
};

ConstrainedSolution solve_constrained(const ThresholdSolution& base,
                                      const Population& pop,
                                      const ForecastSeries& price,
                                      const ForecastSeries& ambient,
                                      double grid_step);

}  // namespace tclplan
