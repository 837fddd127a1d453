#pragma once

#include <cstddef>
#include <vector>

namespace tclplan {

// Uniformly sampled signal: values[k] is the state at time k * dt, with the
// last sample landing exactly on the horizon.
struct Trajectory {
  double dt = 0.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double time(std::size_t k) const { return static_cast<double>(k) * dt; }
  double horizon() const { return time(values.size() - 1); }
  double front() const { return values.front(); }
  double back() const { return values.back(); }
};

// Number of samples for a grid of step dt covering [0, horizon]; throws
// InputError unless dt divides the horizon (within tolerance).
std::size_t grid_size(double horizon, double dt);

}  // namespace tclplan
