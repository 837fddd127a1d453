#include "tclplan/skorokhod.hpp"

#include <algorithm>
#include <cmath>

#include "tclplan/errors.hpp"

namespace tclplan {

std::vector<double> skorokhod_one_sided(std::span<const double> y,
                                        double lower) {
  if (y.empty()) throw InputError("empty path");
  std::vector<double> z(y.size());
  double lift = 0.0;  // running max of (lower - y)^+
  for (std::size_t k = 0; k < y.size(); ++k) {
    lift = std::max(lift, lower - y[k]);
    z[k] = y[k] + std::max(lift, 0.0);
  }
  return z;
}

std::vector<double> skorokhod_two_sided(std::span<const double> y,
                                        double lower, double upper) {
  if (y.empty()) throw InputError("empty path");
  if (!(upper > lower)) throw InputError("upper bound must exceed lower");
  std::vector<double> z(y.size());
  double lift = 0.0;     // one-sided stage
  double pulldown = 0.0;  // upper-regulation stage
  for (std::size_t k = 0; k < y.size(); ++k) {
    lift = std::max(lift, lower - y[k]);
    const double phi = y[k] + std::max(lift, 0.0);
    // sup_s min(A(s), inf_r (phi(r)-lower)) over s <= k satisfies
    //   C_k = min( max(C_{k-1}, (phi_k-upper)^+), phi_k - lower )
    // because min with a constant distributes over the running sup.
    pulldown = std::min(std::max(pulldown, std::max(phi - upper, 0.0)),
                        phi - lower);
    z[k] = phi - pulldown;
  }
  return z;
}

Trajectory skorokhod_one_sided(const Trajectory& y, double lower) {
  Trajectory out;
  out.dt = y.dt;
  out.values = skorokhod_one_sided(std::span<const double>(y.values), lower);
  return out;
}

Trajectory skorokhod_two_sided(const Trajectory& y, double lower,
                               double upper) {
  Trajectory out;
  out.dt = y.dt;
  out.values =
      skorokhod_two_sided(std::span<const double>(y.values), lower, upper);
  return out;
}

Trajectory driving_path(const TclParams& p, const ForecastSeries& ambient,
                        const ControlSignal& base, const Trajectory& held) {
  Trajectory y;
  y.dt = held.dt;
  y.values.resize(held.size());
  if (held.values.empty()) throw InputError("empty trajectory");
  y.values[0] = held.values[0];
  for (std::size_t k = 0; k + 1 < held.size(); ++k) {
    const double t0 = held.time(k);
    const double t1 = std::min(held.time(k + 1), ambient.horizon());
    const double free_end =
        advance_exact(p, ambient, base, held.values[k], t0, t1);
    y.values[k + 1] = y.values[k] + (free_end - held.values[k]);
  }
  return y;
}

ConstrainedSolution solve_constrained(const ThresholdSolution& base,
                                      const Population& pop,
                                      const ForecastSeries& price,
                                      const ForecastSeries& ambient,
                                      double grid_step) {
  ConstrainedSolution sol;
  sol.threshold_price = base.threshold_price;
  sol.on_set = base.on_set;
  sol.base_control = base.control;
  const double p_elec = pop.shared_electrical_power();

  sol.states.reserve(pop.size());
  sol.convex_controls.reserve(pop.size());
  sol.episodes.reserve(pop.size());
  double cost = 0.0;
  for (const TclParams& l : pop.loads) {
    ReflectedResult r = simulate_reflected(l, ambient, base.control, grid_step);
    cost += procurement_cost(price, r.effective_control, p_elec);
    sol.states.push_back(std::move(r.trajectory));
    sol.convex_controls.push_back(std::move(r.effective_control));
    sol.episodes.push_back(std::move(r.episodes));
  }
  sol.cost = cost;
  return sol;
}

}  // namespace tclplan
