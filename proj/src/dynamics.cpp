#include "tclplan/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tclplan/errors.hpp"

namespace tclplan {

std::size_t grid_size(double horizon, double dt) {
  if (!(dt > 0.0)) throw InputError("grid step must be > 0");
  double n_real = horizon / dt;
  auto n = static_cast<std::size_t>(std::llround(n_real));
  if (n == 0 || std::abs(static_cast<double>(n) * dt - horizon) >
                    std::max(kTimeEps, 1e-12 * horizon)) {
    throw InputError("grid step must divide the horizon");
  }
  return n + 1;
}

double step_exact(const TclParams& p, double theta, double ambient, double u,
                  double dt) {
  const double ss = p.steady_state(ambient, u);
  return ss + (theta - ss) * std::exp(-p.alpha * dt);
}

std::optional<double> crossing_time(const TclParams& p, double theta,
                                    double ambient, double u, double target) {
  const double ss = p.steady_state(ambient, u);
  const double a = theta - ss;
  const double b = target - ss;
  if (a == b) return 0.0;
  if (a == 0.0 || b == 0.0) return std::nullopt;  // asymptote, never reached
  const double ratio = b / a;
  if (ratio <= 0.0 || ratio > 1.0) return std::nullopt;
  return -std::log(ratio) / p.alpha;
}

namespace {

// Writes exact samples for grid times in (t_from, t_to], given the state at
// t_from and constant inputs over the span.
class GridSampler {
 public:
  GridSampler(double dt, std::size_t count, std::vector<double>& out)
      : dt_(dt), count_(count), out_(out) {}

  void start(double theta0) {
    out_.assign(count_, 0.0);
    out_[0] = theta0;
    next_ = 1;
  }

  void span(const TclParams& p, double theta_from, double t_from, double t_to,
            double ambient, double u) {
    while (next_ < count_) {
      double tg = static_cast<double>(next_) * dt_;
      if (tg > t_to + kTimeEps) break;
      out_[next_] = step_exact(p, theta_from, ambient, u, tg - t_from);
      ++next_;
    }
  }

  // Constant span (boundary holding): every covered sample takes `level`.
  void span_constant(double level, double t_to) {
    while (next_ < count_) {
      double tg = static_cast<double>(next_) * dt_;
      if (tg > t_to + kTimeEps) break;
      out_[next_] = level;
      ++next_;
    }
  }

 private:
  double dt_;
  std::size_t count_;
  std::vector<double>& out_;
  std::size_t next_ = 1;
};

// Piecewise-constant signal under construction; compresses equal neighbors.
class SignalBuilder {
 public:
  void push(double t, double value) {
    if (!values_.empty() && values_.back() == value) return;
    if (!starts_.empty() && t - starts_.back() <= kTimeEps) {
      // Zero-length segment: overwrite the pending value.
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

}  // namespace

double advance_exact(const TclParams& p, const ForecastSeries& ambient,
                     const ControlSignal& control, double theta, double from,
                     double to) {
  double t = from;
  while (t < to - kTimeEps) {
    const double seg_end =
        std::min(ambient.segment_end(ambient.segment_index(t)),
                 control.segment_end(control.segment_index(t)));
    // seg_end > t except when t sits a hair below a breakpoint; force
    // progress across the sliver in that case.
    const double t1 = std::min(std::max(seg_end, t + kTimeEps), to);
    theta = step_exact(p, theta, ambient.value(t), control.value(t), t1 - t);
    t = t1;
  }
  return theta;
}

Trajectory simulate_with_control(const TclParams& p,
                                 const ForecastSeries& ambient,
                                 const ControlSignal& control,
                                 double grid_step) {
  const double horizon = ambient.horizon();
  if (std::abs(control.horizon() - horizon) > kTimeEps) {
    throw InputError("ambient and control horizons differ");
  }
  if (!is_convex_range(control, 1e-9)) {
    throw InputError("control levels must lie in [0, 1]");
  }
  Trajectory traj;
  traj.dt = grid_step;
  const std::size_t count = grid_size(horizon, grid_step);
  GridSampler sampler(grid_step, count, traj.values);

  double theta = p.theta0;
  sampler.start(theta);
  const std::vector<double> events = merge_breakpoints({&ambient, &control});
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    const double t0 = events[i];
    const double t1 = events[i + 1];
    const double amb = ambient.value(t0);
    const double u = control.value(t0);
    sampler.span(p, theta, t0, t1, amb, u);
    theta = step_exact(p, theta, amb, u, t1 - t0);
  }
  return traj;
}

HystereticResult simulate_hysteretic(const TclParams& p,
                                     const ForecastSeries& ambient,
                                     double grid_step) {
  const double horizon = ambient.horizon();
  const double lo = p.lower_bound();
  const double hi = p.upper_bound();
  for (double v : ambient.values()) {
    if (v < hi - kTempEps) {
      throw InputError(
          "ambient falls below the upper comfort bound; hysteretic cooling "
          "cycling is undefined for this scenario");
    }
  }

  Trajectory traj;
  traj.dt = grid_step;
  const std::size_t count = grid_size(horizon, grid_step);
  GridSampler sampler(grid_step, count, traj.values);

  double theta = p.theta0;
  int sigma = p.sigma0;
  if (theta >= hi - kTempEps) {
    sigma = 1;
  } else if (theta <= lo + kTempEps) {
    sigma = 0;
  }

  SignalBuilder control;
  control.push(0.0, static_cast<double>(sigma));
  sampler.start(theta);

  const std::vector<double>& bps = ambient.breakpoints();
  double t = 0.0;
  std::size_t seg = 0;
  while (t < horizon - kTimeEps) {
    while (seg + 1 < bps.size() && bps[seg + 1] <= t + kTimeEps) ++seg;
    const double span_end = bps[seg + 1];
    const double amb = ambient.segment_value(seg);
    const double target = (sigma == 0) ? hi : lo;
    std::optional<double> tc = crossing_time(p, theta, amb, sigma, target);
    double t_next = span_end;
    bool hit = false;
    if (tc && t + *tc <= span_end + kTimeEps) {
      t_next = std::min(t + *tc, span_end);
      hit = true;
    }
    sampler.span(p, theta, t, t_next, amb, sigma);
    theta = hit ? target : step_exact(p, theta, amb, sigma, t_next - t);
    if (hit && t_next < horizon - kTimeEps) {
      sigma = 1 - sigma;
      control.push(t_next, static_cast<double>(sigma));
    }
    t = t_next;
  }
  return HystereticResult{std::move(traj), control.finish(horizon)};
}

ReflectedResult simulate_reflected(const TclParams& p,
                                   const ForecastSeries& ambient,
                                   const ControlSignal& base,
                                   double grid_step) {
  const double horizon = ambient.horizon();
  if (std::abs(base.horizon() - horizon) > kTimeEps) {
    throw InputError("ambient and control horizons differ");
  }
  if (!is_binary(base, 1e-9)) {
    throw InputError("base control must be binary");
  }
  const double lo = p.lower_bound();
  const double hi = p.upper_bound();
  if (p.theta0 < lo - kTempEps || p.theta0 > hi + kTempEps) {
    throw InputError("initial temperature outside the comfort band");
  }

  Trajectory traj;
  traj.dt = grid_step;
  const std::size_t count = grid_size(horizon, grid_step);
  GridSampler sampler(grid_step, count, traj.values);

  double theta = std::clamp(p.theta0, lo, hi);
  sampler.start(theta);
  SignalBuilder control;
  std::vector<SlideEpisode> episodes;

  auto extend_episode = [&](double from, double to, bool at_upper,
                            double boundary) {
    if (!episodes.empty() && episodes.back().at_upper == at_upper &&
        from - episodes.back().end <= kTimeEps) {
      episodes.back().end = to;
    } else {
      episodes.push_back(SlideEpisode{from, to, at_upper, boundary});
    }
  };

  const std::vector<double> events = merge_breakpoints({&ambient, &base});
  double t = 0.0;
  std::size_t ev = 0;
  while (t < horizon - kTimeEps) {
    while (ev + 1 < events.size() && events[ev + 1] <= t + kTimeEps) ++ev;
    const double span_end = events[ev + 1];
    const double amb = ambient.value(t);
    const double u = base.value(t);
    const double drift_hi = p.alpha * (amb - hi) - p.beta * p.power_thermal * u;
    const double drift_lo = p.alpha * (amb - lo) - p.beta * p.power_thermal * u;

    if (std::abs(theta - hi) <= kTempEps && drift_hi > 0.0) {
      // Holding the upper bound; base OFF is implied unless even full power
      // cannot hold it, which is the infeasible case.
      const double v = p.alpha * (amb - hi) / (p.beta * p.power_thermal);
      if (v > 1.0 + 1e-12) {
        throw SlidingInfeasibleError(
            "holding the upper comfort bound at t=" + std::to_string(t) +
            " needs control level " + std::to_string(v) + " > 1");
      }
      theta = hi;
      control.push(t, v);
      sampler.span_constant(hi, span_end);
      extend_episode(t, span_end, true, hi);
      t = span_end;
      continue;
    }
    if (std::abs(theta - lo) <= kTempEps && drift_lo < 0.0) {
      const double v = p.alpha * (amb - lo) / (p.beta * p.power_thermal);
      if (v < -1e-12) {
        throw SlidingInfeasibleError(
            "holding the lower comfort bound at t=" + std::to_string(t) +
            " needs control level " + std::to_string(v) + " < 0");
      }
      theta = lo;
      control.push(t, std::max(v, 0.0));
      sampler.span_constant(lo, span_end);
      extend_episode(t, span_end, false, lo);
      t = span_end;
      continue;
    }

    // Interior motion: monotone relaxation, so at most one bound is
    // reachable, the one between the state and the steady state.
    control.push(t, u);
    const double ss = p.steady_state(amb, u);
    std::optional<double> tc;
    double bound = 0.0;
    if (ss > theta + kTempEps && theta < hi - kTempEps) {
      tc = crossing_time(p, theta, amb, u, hi);
      bound = hi;
    } else if (ss < theta - kTempEps && theta > lo + kTempEps) {
      tc = crossing_time(p, theta, amb, u, lo);
      bound = lo;
    }
    if (tc && t + *tc <= span_end + kTimeEps) {
      const double t_hit = std::min(t + *tc, span_end);
      sampler.span(p, theta, t, t_hit, amb, u);
      theta = bound;
      t = t_hit;  // regime re-evaluated at the boundary on the next pass
    } else {
      sampler.span(p, theta, t, span_end, amb, u);
      theta = step_exact(p, theta, amb, u, span_end - t);
      t = span_end;
    }
  }

  // Drop zero-length episodes produced by grazing contacts.
  std::vector<SlideEpisode> kept;
  for (const SlideEpisode& e : episodes) {
    if (e.end - e.begin > kTimeEps) kept.push_back(e);
  }
  return ReflectedResult{std::move(traj), control.finish(horizon),
                         std::move(kept)};
}

}  // namespace tclplan
