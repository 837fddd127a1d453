#include "tclplan/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tclplan/dynamics.hpp"
#include "tclplan/errors.hpp"

namespace tclplan {

OnSet::OnSet(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) {
              return a.begin < b.begin;
            });
  for (const Interval& iv : intervals) {
    if (!(iv.end > iv.begin)) {
      throw InputError("ON-set intervals must have positive length");
    }
    if (!intervals_.empty()) {
      if (iv.begin < intervals_.back().end - kTimeEps) {
        throw InputError("ON-set intervals must be disjoint");
      }
      if (iv.begin - intervals_.back().end <= kTimeEps) {
        intervals_.back().end = iv.end;  // touching intervals coalesce
        continue;
      }
    }
    intervals_.push_back(iv);
  }
}

double OnSet::measure() const {
  double acc = 0.0;
  for (const Interval& iv : intervals_) acc += iv.length();
  return acc;
}

bool OnSet::contains(double t) const {
  auto it = std::upper_bound(
      intervals_.begin(), intervals_.end(), t,
      [](double v, const Interval& iv) { return v < iv.begin; });
  if (it == intervals_.begin()) return false;
  --it;
  return t >= it->begin && t < it->end;
}

ControlSignal OnSet::indicator(double horizon) const {
  std::vector<double> starts;
  std::vector<double> values;
  double cursor = 0.0;
  for (const Interval& iv : intervals_) {
    if (iv.begin > cursor + kTimeEps) {
      starts.push_back(cursor);
      values.push_back(0.0);
      cursor = iv.begin;
    }
    starts.push_back(cursor);
    values.push_back(1.0);
    cursor = iv.end;
  }
  if (starts.empty() || cursor < horizon - kTimeEps) {
    starts.push_back(cursor);
    values.push_back(0.0);
  }
  std::vector<double> bps = starts;
  bps.push_back(horizon);
  return ControlSignal(std::move(bps), std::move(values));
}

double occupancy(const ForecastSeries& price, double level) {
  double acc = 0.0;
  for (std::size_t k = 0; k < price.segment_count(); ++k) {
    if (price.segment_value(k) <= level) acc += price.segment_length(k);
  }
  return acc;
}

double threshold_price(const ForecastSeries& price, double tau_per_load) {
  const double horizon = price.horizon();
  if (!(tau_per_load > 0.0)) {
    throw InputError("per-load ON time must be positive");
  }
  if (tau_per_load > horizon + kTimeEps) {
    throw InfeasibleBudgetError("per-load ON time exceeds the horizon");
  }
  std::vector<double> levels = price.values();
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (double level : levels) {
    if (occupancy(price, level) >= tau_per_load - kTimeEps) return level;
  }
  return levels.back();  // tau_per_load == horizon up to roundoff
}

namespace {

// Maximal runs of segments matching a predicate, as merged intervals.
template <typename Pred>
std::vector<Interval> matching_runs(const ForecastSeries& price, Pred pred) {
  std::vector<Interval> runs;
  for (std::size_t k = 0; k < price.segment_count(); ++k) {
    if (!pred(price.segment_value(k))) continue;
    double b = price.segment_begin(k);
    double e = price.segment_end(k);
    if (!runs.empty() && b - runs.back().end <= kTimeEps) {
      runs.back().end = e;
    } else {
      runs.push_back(Interval{b, e});
    }
  }
  return runs;
}

void insert_merged(std::vector<Interval>& set, Interval iv) {
  set.push_back(iv);
  std::sort(set.begin(), set.end(), [](const Interval& a, const Interval& b) {
    return a.begin < b.begin;
  });
  std::vector<Interval> merged;
  for (const Interval& x : set) {
    if (!merged.empty() && x.begin - merged.back().end <= kTimeEps) {
      merged.back().end = std::max(merged.back().end, x.end);
    } else {
      merged.push_back(x);
    }
  }
  set = std::move(merged);
}

bool touches_left(const std::vector<Interval>& set, double t) {
  for (const Interval& iv : set) {
    if (std::abs(iv.end - t) <= kTimeEps) return true;
  }
  return false;
}

bool touches_right(const std::vector<Interval>& set, double t) {
  for (const Interval& iv : set) {
    if (std::abs(iv.begin - t) <= kTimeEps) return true;
  }
  return false;
}

}  // namespace

OnSet cheapest_on_set(const ForecastSeries& price, double tau_per_load) {
  if (tau_per_load <= kTimeEps) return OnSet{};
  const double level = threshold_price(price, tau_per_load);

  std::vector<Interval> selected =
      matching_runs(price, [level](double v) { return v < level; });
  double need = tau_per_load;
  for (const Interval& iv : selected) need -= iv.length();

  std::vector<Interval> free_runs =
      matching_runs(price, [level](double v) { return v == level; });

  while (need > kTimeEps) {
    if (free_runs.empty()) {
      throw Error("plateau fill exhausted; threshold selection inconsistent");
    }
    // Prefer fills that extend an already-selected interval: they add no
    // ON/OFF switching.  Among candidates, earliest fill start wins.
    std::size_t best = free_runs.size();
    Interval best_fill{0.0, 0.0};
    bool best_consumes_front = true;
    for (std::size_t j = 0; j < free_runs.size(); ++j) {
      const Interval& f = free_runs[j];
      const double m = std::min(need, f.length());
      if (touches_left(selected, f.begin)) {
        Interval fill{f.begin, f.begin + m};
        if (best == free_runs.size() || fill.begin < best_fill.begin) {
          best = j;
          best_fill = fill;
          best_consumes_front = true;
        }
      }
      if (touches_right(selected, f.end)) {
        Interval fill{f.end - m, f.end};
        if (best == free_runs.size() || fill.begin < best_fill.begin) {
          best = j;
          best_fill = fill;
          best_consumes_front = false;
        }
      }
    }
    if (best == free_runs.size()) {
      // No plateau touches the selection; open a new interval at the
      // earliest plateau.
      best = 0;
      const Interval& f = free_runs[0];
      const double m = std::min(need, f.length());
      best_fill = Interval{f.begin, f.begin + m};
      best_consumes_front = true;
    }

    insert_merged(selected, best_fill);
    need -= best_fill.length();
    Interval& f = free_runs[best];
    if (best_consumes_front) {
      f.begin = best_fill.end;
    } else {
      f.end = best_fill.begin;
    }
    if (f.length() <= kTimeEps) {
      free_runs.erase(free_runs.begin() + static_cast<long>(best));
    }
  }
  return OnSet(std::move(selected));
}

double procurement_cost(const ForecastSeries& price,
                        const ControlSignal& control, double electrical_kw) {
  return electrical_kw *
         integral_product(price, control, 0.0, price.horizon()) /
         kKwSecondsPerMwh;
}

ThresholdSolution solve_unconstrained(const Population& pop,
                                      const ForecastSeries& price,
                                      const ForecastSeries& ambient,
                                      const EnergyBudget& budget,
                                      double grid_step) {
  const double horizon = price.horizon();
  if (std::abs(ambient.horizon() - horizon) > kTimeEps) {
    throw InputError("price and ambient horizons differ");
  }
  if (budget.tau_bar < -1e-12 || budget.tau_bar > 1.0 + 1e-12) {
    throw InfeasibleBudgetError("tau_bar " + std::to_string(budget.tau_bar) +
                                " outside [0, 1]");
  }
  const double n = static_cast<double>(pop.size());
  const double tau_per_load = budget.tau_load_seconds / n;
  const double p_elec = pop.shared_electrical_power();

  ThresholdSolution sol;
  if (tau_per_load <= kTimeEps) {
    sol.threshold_price = 0.0;  // below every price: the ON-set is empty
    sol.on_set = OnSet{};
  } else {
    sol.threshold_price = threshold_price(price, tau_per_load);
    sol.on_set = cheapest_on_set(price, tau_per_load);
  }
  sol.control = sol.on_set.indicator(horizon);
  sol.cost = n * procurement_cost(price, sol.control, p_elec);
  sol.energy_adjoint = -p_elec * sol.threshold_price;

  sol.states.reserve(pop.size());
  for (const TclParams& l : pop.loads) {
    sol.states.push_back(
        simulate_with_control(l, ambient, sol.control, grid_step));
  }

  Trajectory adj;
  adj.dt = grid_step;
  const std::size_t count = grid_size(horizon, grid_step);
  adj.values.resize(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = std::min(static_cast<double>(k) * grid_step, horizon);
    adj.values[k] = sol.on_set.contains(t)
                        ? p_elec * n * (sol.threshold_price - price.value(t))
                        : 0.0;
  }
  sol.time_adjoint = std::move(adj);
  return sol;
}

}  // namespace tclplan
