#include "tclplan/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "tclplan/csv_io.hpp"
#include "tclplan/errors.hpp"
#include "tclplan/synth.hpp"
#include "tclplan/trajectory.hpp"

namespace tclplan {

namespace {

// Re-throws stage failures with the stage named, preserving the error type
// (the process exit code depends on it).
template <typename F>
auto stage(const char* tag, F&& f) {
  try {
    return f();
  } catch (const InfeasibleBudgetError& e) {
    throw InfeasibleBudgetError(std::string(tag) + ": " + e.what());
  } catch (const SlidingInfeasibleError& e) {
    throw SlidingInfeasibleError(std::string(tag) + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(std::string(tag) + ": " + e.what());
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// Shortest decimal that parses back to exactly the same double, so CSV
// consumers can reproduce in-memory values bit for bit.  Shortest by string
// length, not by precision: at precision 1 a value like 60 renders as
// "6e+01", while precision 2 gives the shorter (and friendlier) "60".
std::string fmt_exact(double v) {
  char buf[64];
  std::string best;
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v &&
        (best.empty() || std::strlen(buf) < best.size())) {
      best = buf;
    }
  }
  return best;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot write '" + path + "'");
  }
  out << text;
}

}  // namespace

RunResult run_plan(const Population& pop, const ForecastSeries& price,
                   const ForecastSeries& ambient, const RunConfig& config) {
  RunResult r;

  stage("input", [&] {
    if (config.grid_step <= 0.0) {
      throw InputError("grid_step must be positive");
    }
    if (config.min_switch_period <= 0.0) {
      throw InputError("min_switch_period must be positive");
    }
    const bool has_energy = config.energy_budget_kwh >= 0.0;
    const bool has_tau = config.tau_bar >= 0.0;
    if (has_energy == has_tau) {
      throw InputError(
          "exactly one of energy_budget_kwh and tau_bar must be given");
    }
    if (std::abs(price.horizon() - ambient.horizon()) > kTimeEps) {
      throw InputError("price horizon " + fmt(price.horizon()) +
                       " s and ambient horizon " + fmt(ambient.horizon()) +
                       " s differ");
    }
    if (config.horizon > 0.0 &&
        std::abs(config.horizon - price.horizon()) > kTimeEps) {
      throw InputError("configured horizon " + fmt(config.horizon) +
                       " s does not match the input series horizon " +
                       fmt(price.horizon()) + " s");
    }
  });
  r.horizon = price.horizon();

  stage("validate", [&] { require_valid(pop, ambient); });

  r.budget = stage("budget", [&] {
    return config.tau_bar >= 0.0
               ? EnergyBudget::from_tau_bar(config.tau_bar, pop, r.horizon)
               : EnergyBudget::from_energy_kwh(config.energy_budget_kwh, pop,
                                               r.horizon);
  });

  r.bounds = tau_bounds(pop, ambient);
  stage("feasibility", [&] {
    const FeasibilityVerdict verdict = check_feasible(r.budget, r.bounds);
    if (!verdict.feasible) {
      throw InfeasibleBudgetError(verdict.reason);
    }
  });

  r.relaxed = stage("threshold", [&] {
    return solve_unconstrained(pop, price, ambient, r.budget,
                               config.grid_step);
  });
  r.constrained = stage("reflection", [&] {
    return solve_constrained(r.relaxed, pop, price, ambient,
                             config.grid_step);
  });
  r.plan = stage("recovery", [&] {
    return recover_binary(r.constrained, pop, price, ambient,
                          config.min_switch_period, config.grid_step);
  });
  return r;
}

RunArtifacts run_plan_files(const RunConfig& config) {
  RunArtifacts artifacts;

  const ForecastSeries price =
      stage("input", [&] { return load_price_csv(config.price_path); });
  const ForecastSeries ambient =
      stage("input", [&] { return load_ambient_csv(config.ambient_path); });
  artifacts.population = stage("input", [&] {
    if (config.synth_count > 0) {
      return synth_population(config.synth_count, config.seed);
    }
    if (config.population_path.empty()) {
      throw InputError("either a population file or a synthetic population "
                       "size is required");
    }
    return load_population_json(config.population_path);
  });

  artifacts.result = run_plan(artifacts.population, price, ambient, config);

  if (!config.output_dir.empty()) {
    write_plan_outputs(artifacts.population, artifacts.result,
                       config.output_dir);
  }
  return artifacts;
}

std::string format_plan_report(const Population& pop, const RunResult& r) {
  std::ostringstream out;
  const auto line = [&](const char* key, const std::string& value) {
    out << key << " = " << value << '\n';
  };

  line("population_size", std::to_string(pop.size()));
  line("horizon_s", fmt(r.horizon));
  line("energy_budget_kwh", fmt(r.budget.energy_kwh));
  line("tau_load_seconds", fmt(r.budget.tau_load_seconds));
  line("tau_bar", fmt(r.budget.tau_bar));
  line("tau_bar_lower", fmt(r.bounds.tau_bar_lower));
  line("tau_bar_upper", fmt(r.bounds.tau_bar_upper));
  line("tau_bar_upper_effective", fmt(r.bounds.tau_bar_upper_effective()));
  line("energy_lower_kwh", fmt(r.bounds.energy_lower_kwh));
  line("energy_upper_kwh", fmt(r.bounds.energy_upper_kwh));
  line("threshold_price", fmt(r.plan.threshold_price));

  const auto& intervals = r.plan.on_set.intervals();
  line("on_set_interval_count", std::to_string(intervals.size()));
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    line(("on_set_interval_" + std::to_string(i)).c_str(),
         fmt(intervals[i].begin) + " " + fmt(intervals[i].end));
  }
  line("on_set_measure_s", fmt(r.plan.on_set.measure()));

  line("cost_fractional", fmt(r.plan.cost_convexified));
  line("cost_binary", fmt(r.plan.cost));
  line("matching_max_deviation_c", fmt(r.plan.matching_max_deviation));

  double excursion = 0.0;
  for (double e : r.plan.excursion_bounds) {
    excursion = std::max(excursion, e);
  }
  line("excursion_bound_max_c", fmt(excursion));
  return std::move(out).str();
}

void write_plan_outputs(const Population& pop, const RunResult& r,
                        const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw InputError("cannot create output directory '" + dir +
                     "': " + ec.message());
  }
  const std::size_t n = pop.size();
  const Trajectory& aggregate = r.plan.aggregate_power;
  const std::size_t samples = aggregate.values.size();

  {
    std::ostringstream out;
    out << "time_s,power_kw\n";
    for (std::size_t k = 0; k < samples; ++k) {
      out << fmt_exact(aggregate.time(k)) << ','
          << fmt_exact(aggregate.values[k]) << '\n';
    }
    write_text_file(dir + "/plan_aggregate.csv", std::move(out).str());
  }
  {
    std::ostringstream out;
    out << "time_s";
    for (std::size_t i = 0; i < n; ++i) out << ",u" << i;
    out << '\n';
    for (std::size_t k = 0; k < samples; ++k) {
      const double t = aggregate.time(k);
      out << fmt_exact(t);
      for (std::size_t i = 0; i < n; ++i) {
        out << ',' << (r.plan.controls[i].value(t) > 0.5 ? '1' : '0');
      }
      out << '\n';
    }
    write_text_file(dir + "/plan_controls.csv", std::move(out).str());
  }
  {
    std::ostringstream out;
    out << "time_s";
    for (std::size_t i = 0; i < n; ++i) out << ",theta" << i;
    out << '\n';
    for (std::size_t k = 0; k < samples; ++k) {
      out << fmt_exact(aggregate.time(k));
      for (std::size_t i = 0; i < n; ++i) {
        out << ',' << fmt_exact(r.plan.trajectories[i].values[k]);
      }
      out << '\n';
    }
    write_text_file(dir + "/plan_trajectories.csv", std::move(out).str());
  }
  write_text_file(dir + "/plan_report", format_plan_report(pop, r));
}

}  // namespace tclplan
