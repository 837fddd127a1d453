#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace tclplan {

// Right-continuous piecewise-constant function of time on [0, T].
//
// value(t) = values[k] for t in [breakpoints[k], breakpoints[k+1]); the
// horizon endpoint T maps to the last segment's value.  Price and ambient
// forecasts and control signals all share this representation, so interval
// arithmetic (integrals, products, averages) stays exact on breakpoints.
class StepSeries {
 public:
  // Empty sentinel (horizon 0, no segments); assign before use.
  StepSeries() : breakpoints_{0.0} {}

  // breakpoints: strictly increasing, breakpoints.front() == 0; one more
  // entry than values.  Throws InputError on any structural violation.
  StepSeries(std::vector<double> breakpoints, std::vector<double> values);

  static StepSeries constant(double horizon, double value);

  double horizon() const { return breakpoints_.back(); }
  std::size_t segment_count() const { return values_.size(); }

  double segment_begin(std::size_t k) const { return breakpoints_[k]; }
  double segment_end(std::size_t k) const { return breakpoints_[k + 1]; }
  double segment_value(std::size_t k) const { return values_[k]; }
  double segment_length(std::size_t k) const {
    return breakpoints_[k + 1] - breakpoints_[k];
  }

  // Index of the segment containing t (right-continuous; t == T maps to the
  // last segment).  t must lie in [0, T].
  std::size_t segment_index(double t) const;
  double value(double t) const { return values_[segment_index(t)]; }

  double integral() const;                  // over [0, T]
  double integral(double a, double b) const;  // over [a, b] within [0, T]
  double time_average() const { return integral() / horizon(); }

  double min_value() const;
  double max_value() const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

// Price or temperature forecast over the planning horizon.
using ForecastSeries = StepSeries;
// Per-load control level over time; binary {0,1} or convexified [0,1].
using ControlSignal = StepSeries;

bool is_binary(const StepSeries& s, double tol = 0.0);
bool is_convex_range(const StepSeries& s, double tol = 1e-12);

// Sorted union of the series' breakpoints (duplicates within tol removed).
std::vector<double> merge_breakpoints(
    std::initializer_list<const StepSeries*> series, double tol = 1e-12);

// Exact integral of a(t) * b(t) over [from, to].
double integral_product(const StepSeries& a, const StepSeries& b, double from,
                        double to);

}  // namespace tclplan
