#include "tclplan/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tclplan/errors.hpp"

namespace tclplan {

double exp_weighted_control_integral(const ControlSignal& v, double from,
                                     double to, double alpha) {
  if (to < from) throw InputError("integral bounds reversed");
  double acc = 0.0;
  double t = from;
  while (t < to - kTimeEps) {
    const std::size_t k = v.segment_index(t);
    const double t1 = std::min(std::max(v.segment_end(k), t + kTimeEps), to);
    // int_t^t1 e^(alpha(s-from)) ds, exact.
    const double lo = t - from;
    acc += v.value(t) * std::exp(alpha * lo) * std::expm1(alpha * (t1 - t)) /
           alpha;
    t = t1;
  }
  return acc;
}

double gamma_upper_from_integral(double weighted_integral, double alpha) {
  if (weighted_integral < 0.0) {
    throw InputError("weighted control integral must be >= 0");
  }
  return std::log1p(alpha * weighted_integral) / alpha;
}

double gamma_upper(const ControlSignal& v, double window_begin, double window,
                   double alpha) {
  return gamma_upper_from_integral(
      exp_weighted_control_integral(v, window_begin, window_begin + window,
                                    alpha),
      alpha);
}

double gamma_lower_from_integral(double weighted_integral, double window,
                                 double alpha) {
  const double x = alpha * std::exp(-alpha * window) * weighted_integral;
  if (x >= 1.0) {
    throw Error("weighted control integral too large for the window");
  }
  return -std::log1p(-x) / alpha;
}

double gamma_lower(const ControlSignal& v, double window_begin, double window,
                   double alpha) {
  return gamma_lower_from_integral(
      exp_weighted_control_integral(v, window_begin, window_begin + window,
                                    alpha),
      window, alpha);
}

namespace {

// Piecewise-constant signal under construction; compresses equal neighbors.
class SignalBuilder {
 public:
  void push(double t, double value) {
    if (!values_.empty() && values_.back() == value) return;
    if (!starts_.empty() && t - starts_.back() <= kTimeEps) {
      values_.back() = value;
      if (values_.size() >= 2 && values_[values_.size() - 2] == value) {
        values_.pop_back();
        starts_.pop_back();
      }
      return;
    }
    starts_.push_back(t);
    values_.push_back(value);
  }

  ControlSignal finish(double horizon) {
    std::vector<double> bps = starts_;
    bps.push_back(horizon);
    return ControlSignal(std::move(bps), std::move(values_));
  }

 private:
  std::vector<double> starts_;
  std::vector<double> values_;
};

void copy_base_segments(SignalBuilder& out, const ControlSignal& base,
                        double from, double to) {
  double t = from;
  while (t < to - kTimeEps) {
    const std::size_t k = base.segment_index(t);
    out.push(t, base.segment_value(k));
    t = std::min(std::max(base.segment_end(k), t + kTimeEps), to);
  }
}

void series_range(const ForecastSeries& s, double from, double to,
                  double& min_v, double& max_v) {
  min_v = s.value(from);
  max_v = min_v;
  double t = from;
  while (t < to - kTimeEps) {
    const std::size_t k = s.segment_index(t);
    min_v = std::min(min_v, s.segment_value(k));
    max_v = std::max(max_v, s.segment_value(k));
    t = std::min(std::max(s.segment_end(k), t + kTimeEps), to);
  }
}

}  // namespace

Plan recover_binary(const ConstrainedSolution& sol, const Population& pop,
                    const ForecastSeries& price, const ForecastSeries& ambient,
                    double min_switch_period, double grid_step) {
  if (!(min_switch_period > 0.0)) {
    throw InputError("minimum switching period must be > 0");
  }
  if (sol.states.size() != pop.size()) {
    throw InputError("solution and population sizes differ");
  }
  const double horizon = ambient.horizon();
  const double p_elec = pop.shared_electrical_power();

  Plan plan;
  plan.threshold_price = sol.threshold_price;
  plan.on_set = sol.on_set;
  plan.cost_convexified = sol.cost;
  plan.controls.reserve(pop.size());
  plan.trajectories.reserve(pop.size());
  plan.windows.resize(pop.size());
  plan.excursion_bounds.assign(pop.size(), 0.0);

  for (std::size_t i = 0; i < pop.size(); ++i) {
    const TclParams& l = pop.loads[i];
    const ControlSignal& v = sol.convex_controls[i];
    SignalBuilder builder;
    double cursor = 0.0;
    double excursion = 0.0;

    for (const SlideEpisode& ep : sol.episodes[i]) {
      copy_base_segments(builder, sol.base_control, cursor, ep.begin);
      double w = ep.begin;
      while (w < ep.end - kTimeEps) {
        const double len = std::min(min_switch_period, ep.end - w);
        const double weighted =
            exp_weighted_control_integral(v, w, w + len, l.alpha);
        double amb_min = 0.0;
        double amb_max = 0.0;
        series_range(ambient, w, w + len, amb_min, amb_max);
        double on_time = 0.0;
        if (ep.at_upper) {
          on_time = std::min(gamma_upper_from_integral(weighted, l.alpha), len);
          if (on_time > kTimeEps) builder.push(w, 1.0);
          if (len - on_time > kTimeEps) builder.push(w + on_time, 0.0);
          // Depth of the in-window dip below the held bound: the ON block
          // relaxes toward the coldest reachable steady state.
          const double ss_cold = l.steady_state(amb_min, 1.0);
          excursion = std::max(excursion, (ep.boundary - ss_cold) *
                                              -std::expm1(-l.alpha * on_time));
        } else {
          on_time =
              std::min(gamma_lower_from_integral(weighted, len, l.alpha), len);
          if (len - on_time > kTimeEps) builder.push(w, 0.0);
          if (on_time > kTimeEps) builder.push(w + len - on_time, 1.0);
          const double off_time = len - on_time;
          excursion = std::max(excursion, (amb_max - ep.boundary) *
                                              -std::expm1(-l.alpha * off_time));
        }
        plan.windows[i].push_back(
            RecoveredWindow{w, len, on_time, ep.at_upper, ep.boundary});
        w += len;
      }
      cursor = ep.end;
    }
    copy_base_segments(builder, sol.base_control, cursor, horizon);
    plan.excursion_bounds[i] = excursion;

    ControlSignal control = builder.finish(horizon);
    plan.cost += procurement_cost(price, control, p_elec);
    plan.trajectories.push_back(
        simulate_with_control(l, ambient, control, grid_step));
    plan.controls.push_back(std::move(control));
  }

  Trajectory agg;
  agg.dt = grid_step;
  const std::size_t count = grid_size(horizon, grid_step);
  agg.values.assign(count, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = std::min(static_cast<double>(k) * grid_step, horizon);
    double on = 0.0;
    for (const ControlSignal& c : plan.controls) on += c.value(t);
    agg.values[k] = on * p_elec;
  }
  plan.aggregate_power = std::move(agg);

  plan.matching_max_deviation = verify_matching(plan, sol, pop, ambient);
  return plan;
}

double verify_matching(const Plan& plan, const ConstrainedSolution& sol,
                       const Population& pop, const ForecastSeries& ambient) {
  double worst = 0.0;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    const TclParams& l = pop.loads[i];
    const ControlSignal& control = plan.controls[i];
    std::size_t next_window = 0;
    for (const SlideEpisode& ep : sol.episodes[i]) {
      double theta = ep.boundary;
      while (next_window < plan.windows[i].size()) {
        const RecoveredWindow& w = plan.windows[i][next_window];
        if (w.begin < ep.begin - kTimeEps) {
          ++next_window;
          continue;
        }
        if (w.begin > ep.end - kTimeEps) break;
        theta = advance_exact(l, ambient, control, theta, w.begin,
                              w.begin + w.length);
        worst = std::max(worst, std::abs(theta - w.boundary));
        ++next_window;
      }
    }
  }
  return worst;
}

}  // namespace tclplan
