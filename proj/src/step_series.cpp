#include "tclplan/step_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tclplan/errors.hpp"

namespace tclplan {

StepSeries::StepSeries(std::vector<double> breakpoints,
                       std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.empty()) {
    throw InputError("step series needs at least one segment");
  }
  if (breakpoints_.size() != values_.size() + 1) {
    throw InputError("step series needs one more breakpoint than values");
  }
  if (breakpoints_.front() != 0.0) {
    throw InputError("step series must start at time 0");
  }
  for (std::size_t k = 0; k + 1 < breakpoints_.size(); ++k) {
    if (!(breakpoints_[k] < breakpoints_[k + 1])) {
      throw InputError("step series breakpoints must be strictly increasing");
    }
  }
  for (double b : breakpoints_) {
    if (!std::isfinite(b)) throw InputError("non-finite breakpoint");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("non-finite segment value");
  }
}

StepSeries StepSeries::constant(double horizon, double value) {
  return StepSeries({0.0, horizon}, {value});
}

std::size_t StepSeries::segment_index(double t) const {
  if (t < breakpoints_.front() || t > breakpoints_.back()) {
    throw InputError("time " + std::to_string(t) + " outside [0, " +
                     std::to_string(breakpoints_.back()) + "]");
  }
  // First breakpoint strictly greater than t starts the next segment.
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  std::size_t k = static_cast<std::size_t>(it - breakpoints_.begin());
  if (k == breakpoints_.size()) return values_.size() - 1;  // t == T
  return k - 1;
}

double StepSeries::integral() const {
  double acc = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    acc += values_[k] * segment_length(k);
  }
  return acc;
}

double StepSeries::integral(double a, double b) const {
  if (b < a) throw InputError("integral bounds reversed");
  if (a < breakpoints_.front() || b > breakpoints_.back()) {
    throw InputError("integral bounds outside series horizon");
  }
  if (a == b) return 0.0;
  std::size_t ka = segment_index(a);
  double acc = 0.0;
  for (std::size_t k = ka; k < values_.size(); ++k) {
    double lo = std::max(a, segment_begin(k));
    double hi = std::min(b, segment_end(k));
    if (hi <= lo) break;
    acc += values_[k] * (hi - lo);
    if (segment_end(k) >= b) break;
  }
  return acc;
}

double StepSeries::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double StepSeries::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

bool is_binary(const StepSeries& s, double tol) {
  for (double v : s.values()) {
    if (std::abs(v) > tol && std::abs(v - 1.0) > tol) return false;
  }
  return true;
}

bool is_convex_range(const StepSeries& s, double tol) {
  for (double v : s.values()) {
    if (v < -tol || v > 1.0 + tol) return false;
  }
  return true;
}

std::vector<double> merge_breakpoints(
    std::initializer_list<const StepSeries*> series, double tol) {
  std::vector<double> merged;
  for (const StepSeries* s : series) {
    merged.insert(merged.end(), s->breakpoints().begin(),
                  s->breakpoints().end());
  }
  std::sort(merged.begin(), merged.end());
  std::vector<double> out;
  for (double t : merged) {
    if (out.empty() || t - out.back() > tol) out.push_back(t);
  }
  return out;
}

double integral_product(const StepSeries& a, const StepSeries& b, double from,
                        double to) {
  if (to < from) throw InputError("integral bounds reversed");
  if (from == to) return 0.0;
  std::vector<double> grid = merge_breakpoints({&a, &b});
  double acc = 0.0;
  double t = from;
  for (double next : grid) {
    if (next <= t) continue;
    double hi = std::min(next, to);
    if (hi > t) {
      acc += a.value(t) * b.value(t) * (hi - t);
      t = hi;
    }
    if (t >= to) break;
  }
  if (t < to) acc += a.value(t) * b.value(t) * (to - t);
  return acc;
}

}  // namespace tclplan
