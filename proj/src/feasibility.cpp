#include "tclplan/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "tclplan/errors.hpp"

namespace tclplan {

double mean_ambient(const ForecastSeries& ambient) {
  return ambient.time_average();
}

FeasibilityBounds tau_bounds(const Population& pop,
                             const ForecastSeries& ambient) {
  if (pop.loads.empty()) throw InputError("population is empty");
  const double n = static_cast<double>(pop.size());
  const double p = pop.shared_thermal_power();
  const double eta = pop.shared_efficiency();
  const double horizon = ambient.horizon();
  const double mean = mean_ambient(ambient);
  const double amb_min = ambient.min_value();
  const double amb_max = ambient.max_value();

  FeasibilityBounds b;
  double sum_lower = 0.0;  // sum of (alpha/beta) * (mean - U)
  double sum_upper = 0.0;  // sum of (alpha/beta) * (mean - L)
  b.hold_upper_level_min = std::numeric_limits<double>::infinity();
  b.hold_lower_level_min = std::numeric_limits<double>::infinity();
  b.hold_upper_level_max = -std::numeric_limits<double>::infinity();
  b.hold_lower_level_max = -std::numeric_limits<double>::infinity();
  for (const TclParams& l : pop.loads) {
    const double ratio = l.alpha / l.beta;
    sum_lower += ratio * (mean - l.upper_bound());
    sum_upper += ratio * (mean - l.lower_bound());
    const double denom = l.beta * l.power_thermal;
    b.hold_upper_level_min =
        std::min(b.hold_upper_level_min,
                 l.alpha * (amb_min - l.upper_bound()) / denom);
    b.hold_upper_level_max =
        std::max(b.hold_upper_level_max,
                 l.alpha * (amb_max - l.upper_bound()) / denom);
    b.hold_lower_level_min =
        std::min(b.hold_lower_level_min,
                 l.alpha * (amb_min - l.lower_bound()) / denom);
    b.hold_lower_level_max =
        std::max(b.hold_lower_level_max,
                 l.alpha * (amb_max - l.lower_bound()) / denom);
  }
  b.tau_bar_lower = sum_lower / (n * p);
  b.tau_bar_upper = sum_upper / (n * p);
  b.upper_exceeds_one = b.tau_bar_upper > 1.0;
  // tau_bar -> kWh: E = tau_bar * N * T * P / eta, with T in seconds.
  const double to_kwh = n * horizon * p / (eta * kSecondsPerHour);
  b.energy_lower_kwh = b.tau_bar_lower * to_kwh;
  b.energy_upper_kwh = b.tau_bar_upper * to_kwh;
  return b;
}

FeasibilityVerdict check_feasible(const EnergyBudget& budget,
                                  const FeasibilityBounds& bounds) {
  std::ostringstream os;
  if (budget.tau_bar < 0.0 || budget.tau_bar > 1.0) {
    os << "tau_bar " << budget.tau_bar << " outside [0, 1]";
    return {false, os.str()};
  }
  if (budget.tau_bar < bounds.tau_bar_lower - 1e-12) {
    os << "tau_bar " << budget.tau_bar
       << " below the boundary-holding lower bound " << bounds.tau_bar_lower;
    return {false, os.str()};
  }
  const double upper = bounds.tau_bar_upper_effective();
  if (budget.tau_bar > upper + 1e-12) {
    os << "tau_bar " << budget.tau_bar << " above the upper bound " << upper;
    return {false, os.str()};
  }
  return {true, ""};
}

static std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string format_feasibility_report(const Population& pop, double horizon,
                                      const FeasibilityBounds& bounds) {
  std::ostringstream os;
  os << "loads: " << pop.size() << '\n';
  os << "horizon_s: " << fmt(horizon) << '\n';
  os << "tau_bar_lower: " << fmt(bounds.tau_bar_lower) << '\n';
  os << "tau_bar_upper_raw: " << fmt(bounds.tau_bar_upper) << '\n';
  os << "tau_bar_upper_effective: " << fmt(bounds.tau_bar_upper_effective())
     << '\n';
  os << "tau_bar_upper_exceeds_one: "
     << (bounds.upper_exceeds_one ? "true" : "false") << '\n';
  os << "energy_lower_kwh: " << fmt(bounds.energy_lower_kwh) << '\n';
  os << "energy_upper_kwh_raw: " << fmt(bounds.energy_upper_kwh) << '\n';
  os << "hold_upper_level_range: [" << fmt(bounds.hold_upper_level_min) << ", "
     << fmt(bounds.hold_upper_level_max) << "]\n";
  os << "hold_lower_level_range: [" << fmt(bounds.hold_lower_level_min) << ", "
     << fmt(bounds.hold_lower_level_max) << "]\n";
  return os.str();
}

}  // namespace tclplan
