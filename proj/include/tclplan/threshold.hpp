#pragma once

#include <vector>

#include "tclplan/model.hpp"
#include "tclplan/step_series.hpp"
#include "tclplan/trajectory.hpp"

namespace tclplan {

struct Interval {
  double begin = 0.0;
  double end = 0.0;
  double length() const { return end - begin; }
};

// Finite union of disjoint, sorted, positive-length time intervals within
// [0, horizon]; the common ON-set shared by every load.
class OnSet {
 public:
  OnSet() = default;
  explicit OnSet(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return intervals_; }
  double measure() const;
  bool contains(double t) const;
  bool empty() const { return intervals_.empty(); }

  // Binary indicator signal over [0, horizon].
  ControlSignal indicator(double horizon) const;

 private:
  std::vector<Interval> intervals_;
};

// Total time the price lies at or below the given level.
double occupancy(const ForecastSeries& price, double level);

// Smallest price level whose occupancy covers the per-load ON time
// tau_per_load.  For step prices this is a segment value and is unique.
double threshold_price(const ForecastSeries& price, double tau_per_load);

// Cheapest time set of measure tau_per_load: everything strictly below the
// threshold price, topped up inside threshold-price plateaus.  Plateau fill
// extends intervals already selected (fewest switchings), earliest first.
OnSet cheapest_on_set(const ForecastSeries& price, double tau_per_load);

// Synchronized relaxed-problem optimum when comfort bounds are ignored:
// every load runs exactly on the cheapest ON-set.
struct ThresholdSolution {
  double threshold_price = 0.0;
  OnSet on_set;
  ControlSignal control;            // shared indicator of the ON-set
  std::vector<Trajectory> states;   // per-load free trajectories
  Trajectory time_adjoint;          // adjoint of elapsed time (diagnostic)
  double energy_adjoint = 0.0;      // adjoint of consumed energy (constant)
  double cost = 0.0;                // procurement cost, currency
};

ThresholdSolution solve_unconstrained(const Population& pop,
                                      const ForecastSeries& price,
                                      const ForecastSeries& ambient,
                                      const EnergyBudget& budget,
                                      double grid_step);

// Procurement cost in currency for one load of the given electrical power
// following `control` under `price` (price per MWh, power in kW, time in s).
double procurement_cost(const ForecastSeries& price,
                        const ControlSignal& control, double electrical_kw);

}  // namespace tclplan
