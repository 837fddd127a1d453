#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tclplan/csv_io.hpp"
#include "tclplan/errors.hpp"
#include "tclplan/feasibility.hpp"
#include "tclplan/pipeline.hpp"
#include "tclplan/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInputError = 3;

struct SynthArgs {
  std::size_t count = 0;
  std::uint64_t seed = 1;
  std::string output;
  tclplan::SynthConfig config;
};

int run_plan_command(const tclplan::RunConfig& config) {
  const tclplan::RunArtifacts artifacts = tclplan::run_plan_files(config);
  std::cout << tclplan::format_plan_report(artifacts.population,
                                           artifacts.result);
  if (!config.output_dir.empty()) {
    std::cout << "outputs_written_to = " << config.output_dir << '\n';
  }
  return kExitOk;
}

int run_feasibility_command(const tclplan::RunConfig& config) {
  const tclplan::ForecastSeries ambient =
      tclplan::load_ambient_csv(config.ambient_path);
  tclplan::Population pop;
  if (config.synth_count > 0) {
    pop = tclplan::synth_population(config.synth_count, config.seed);
  } else if (!config.population_path.empty()) {
    pop = tclplan::load_population_json(config.population_path);
  } else {
    throw tclplan::InputError(
        "either a population file or a synthetic population size is "
        "required");
  }
  tclplan::require_valid(pop, ambient);

  const tclplan::FeasibilityBounds bounds = tclplan::tau_bounds(pop, ambient);
  std::cout << tclplan::format_feasibility_report(pop, ambient.horizon(),
                                                  bounds);

  const bool has_energy = config.energy_budget_kwh >= 0.0;
  const bool has_tau = config.tau_bar >= 0.0;
  if (has_energy && has_tau) {
    throw tclplan::InputError(
        "give at most one of --energy-kwh and --tau-bar");
  }
  if (has_energy || has_tau) {
    const tclplan::EnergyBudget budget =
        has_tau ? tclplan::EnergyBudget::from_tau_bar(config.tau_bar, pop,
                                                      ambient.horizon())
                : tclplan::EnergyBudget::from_energy_kwh(
                      config.energy_budget_kwh, pop, ambient.horizon());
    const tclplan::FeasibilityVerdict verdict =
        tclplan::check_feasible(budget, bounds);
    std::cout << "budget_tau_bar = ";
    std::printf("%.10g\n", budget.tau_bar);
    std::cout << "budget_feasible = " << (verdict.feasible ? "yes" : "no")
              << '\n';
    if (!verdict.feasible) {
      std::cout << "budget_reason = " << verdict.reason << '\n';
      return kExitInfeasible;
    }
  }
  return kExitOk;
}

int run_synth_command(const SynthArgs& args) {
  const tclplan::Population pop =
      tclplan::synth_population(args.count, args.seed, args.config);
  tclplan::save_population_json(pop, args.output);
  std::cout << "loads_written = " << pop.size() << '\n';
  std::cout << "output = " << args.output << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Day-ahead planner for a population of thermostatically controlled "
      "loads: feasibility bounds, price-threshold scheduling, comfort-band "
      "reflection, and duty-cycle recovery."};
  app.require_subcommand(1);

  tclplan::RunConfig config;

  CLI::App* plan = app.add_subcommand(
      "plan", "Compute a day-ahead plan and write the output bundle");
  plan->add_option("--price", config.price_path,
                   "Price forecast CSV (start_time_iso8601,price_per_mwh)")
      ->required();
  plan->add_option("--ambient", config.ambient_path,
                   "Ambient forecast CSV (start_time_iso8601,temperature_c)")
      ->required();
  plan->add_option("--population", config.population_path,
                   "Population JSON file");
  plan->add_option("--synth-count", config.synth_count,
                   "Generate this many synthetic loads instead of reading "
                   "--population");
  plan->add_option("--seed", config.seed, "Seed for --synth-count");
  plan->add_option("--energy-kwh", config.energy_budget_kwh,
                   "Electrical energy budget in kWh");
  plan->add_option("--tau-bar", config.tau_bar,
                   "Normalized ON-time budget in [0,1]");
  plan->add_option("--horizon", config.horizon,
                   "Expected horizon in seconds (checked against inputs)");
  plan->add_option("--grid-step", config.grid_step,
                   "Output sampling step in seconds");
  plan->add_option("--min-switch-period", config.min_switch_period,
                   "Duty-cycle window length in seconds");
  plan->add_option("--output-dir", config.output_dir,
                   "Directory for plan_aggregate.csv, plan_controls.csv, "
                   "plan_trajectories.csv, plan_report");

  CLI::App* feas = app.add_subcommand(
      "feasibility", "Print the attainable budget interval for a population");
  feas->add_option("--ambient", config.ambient_path,
                   "Ambient forecast CSV (start_time_iso8601,temperature_c)")
      ->required();
  feas->add_option("--population", config.population_path,
                   "Population JSON file");
  feas->add_option("--synth-count", config.synth_count,
                   "Generate this many synthetic loads instead of reading "
                   "--population");
  feas->add_option("--seed", config.seed, "Seed for --synth-count");
  feas->add_option("--energy-kwh", config.energy_budget_kwh,
                   "Budget to check, as electrical energy in kWh");
  feas->add_option("--tau-bar", config.tau_bar,
                   "Budget to check, as a normalized ON-time in [0,1]");

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand(
      "synth", "Generate a synthetic population JSON file");
  synth->add_option("--count", synth_args.count, "Number of loads")
      ->required();
  synth->add_option("--seed", synth_args.seed, "Random seed");
  synth->add_option("--output", synth_args.output, "Output JSON path")
      ->required();
  synth->add_option("--alpha-min", synth_args.config.alpha_min,
                    "Thermal drift rate lower bound, 1/s");
  synth->add_option("--alpha-max", synth_args.config.alpha_max,
                    "Thermal drift rate upper bound, 1/s");
  synth->add_option("--beta-min", synth_args.config.beta_min,
                    "Cooling gain lower bound, degC/(kW*s)");
  synth->add_option("--beta-max", synth_args.config.beta_max,
                    "Cooling gain upper bound, degC/(kW*s)");
  synth->add_option("--setpoint-min", synth_args.config.setpoint_min,
                    "Setpoint lower bound, degC");
  synth->add_option("--setpoint-max", synth_args.config.setpoint_max,
                    "Setpoint upper bound, degC");
  synth->add_option("--delta-min", synth_args.config.delta_min,
                    "Comfort half-width lower bound, degC");
  synth->add_option("--delta-max", synth_args.config.delta_max,
                    "Comfort half-width upper bound, degC");
  synth->add_option("--power-thermal", synth_args.config.power_thermal,
                    "Shared thermal power, kW");
  synth->add_option("--efficiency", synth_args.config.efficiency,
                    "Shared coefficient of performance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (plan->parsed()) return run_plan_command(config);
    if (feas->parsed()) return run_feasibility_command(config);
    return run_synth_command(synth_args);
  } catch (const tclplan::InfeasibleBudgetError& e) {
    std::cerr << "infeasible budget: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const tclplan::SlidingInfeasibleError& e) {
    std::cerr << "infeasible budget: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const tclplan::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
