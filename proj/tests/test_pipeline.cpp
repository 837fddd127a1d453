#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "tclplan/csv_io.hpp"
#include "tclplan/errors.hpp"
#include "tclplan/pipeline.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

using tclplan::RunConfig;
using tclplan::StepSeries;
using test_support::make_load;
using test_support::make_population;

namespace {

const double kPrices[24] = {22.5, 21.0, 19.5, 18.0, 17.5, 18.5, 21.5, 26.0,
                            31.0, 36.0, 41.0, 46.5, 52.0, 57.5, 60.0, 58.0,
                            54.0, 48.0, 42.0, 37.0, 32.0, 28.0, 25.0, 23.5};
const double kAmbients[24] = {27.0, 26.5, 26.0, 25.8, 25.6, 26.0,
                              27.0, 28.4, 29.8, 31.0, 32.0, 32.8,
                              33.4, 33.8, 34.0, 33.8, 33.2, 32.4,
                              31.4, 30.4, 29.4, 28.6, 28.0, 27.4};

StepSeries hourly(const double* vals) {
  std::vector<double> bp(25), v(vals, vals + 24);
  for (int k = 0; k <= 24; ++k) bp[k] = k * 3600.0;
  return StepSeries(std::move(bp), std::move(v));
}

tclplan::Population demo_population() {
  return make_population({
      make_load(4.4032e-3, 8.6e-3, 20.0, 0.4, 20.3),
      make_load(4.1067e-3, 8.4e-3, 21.0, 0.6, 20.6),
  });
}

fs::path scratch_dir(const std::string& leaf) {
  const fs::path dir = fs::temp_directory_path() / "tclplan_pipeline" / leaf;
  fs::create_directories(dir);
  return dir;
}

void write_hourly_csv(const fs::path& path, const char* column,
                      const double* vals) {
  std::ofstream out(path);
  out << "start_time_iso8601," << column << "\n";
  for (int h = 0; h < 24; ++h) {
    char line[64];
    std::snprintf(line, sizeof line, "2026-07-15T%02d:00:00,%.10g\n", h,
                  vals[h]);
    out << line;
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void expect_prefixed(const std::function<void()>& fn, const char* type_name,
                     const std::string& prefix) {
  try {
    fn();
    FAIL_CHECK("expected a " << type_name << " with prefix '" << prefix
                             << "'");
  } catch (const tclplan::Error& e) {
    const std::string what = e.what();
    CAPTURE(what);
    CHECK(what.rfind(prefix, 0) == 0);
  }
}

}  // namespace

TEST_CASE("in-memory run produces a consistent plan") {
  const tclplan::Population pop = demo_population();
  const StepSeries price = hourly(kPrices);
  const StepSeries ambient = hourly(kAmbients);

  RunConfig cfg;
  cfg.tau_bar = 0.34;
  const tclplan::RunResult r = tclplan::run_plan(pop, price, ambient, cfg);

  CHECK(r.horizon == 86400.0);
  CHECK(r.budget.tau_bar == doctest::Approx(0.34).epsilon(1e-15));
  CHECK(r.budget.tau_load_seconds ==
        doctest::Approx(0.34 * 2 * 86400.0).epsilon(1e-15));
  CHECK(r.bounds.tau_bar_lower < 0.34);
  CHECK(r.bounds.tau_bar_upper_effective() > 0.34);

  // Budget lands on the relaxed ON set exactly.
  CHECK(r.relaxed.on_set.measure() ==
        doctest::Approx(r.budget.tau_load_seconds / 2).epsilon(1e-12));
  CHECK(r.plan.threshold_price == r.relaxed.threshold_price);
  CHECK(r.plan.matching_max_deviation <= 1e-9);
  CHECK(r.plan.cost > 0.0);
  CHECK(r.plan.cost_convexified > 0.0);

  // An energy budget equivalent to the same tau gives the same threshold.
  RunConfig cfg_energy;
  cfg_energy.energy_budget_kwh = 0.34 * 2 * 86400.0 * 14.0 / (2.5 * 3600.0);
  const tclplan::RunResult r2 =
      tclplan::run_plan(pop, price, ambient, cfg_energy);
  CHECK(r2.relaxed.threshold_price ==
        doctest::Approx(r.relaxed.threshold_price).epsilon(1e-12));
}

TEST_CASE("stage failures carry their stage prefix and error type") {
  const tclplan::Population pop = demo_population();
  const StepSeries price = hourly(kPrices);
  const StepSeries ambient = hourly(kAmbients);

  RunConfig cfg;
  cfg.tau_bar = 0.34;

  SUBCASE("bad grid step") {
    cfg.grid_step = 0.0;
    expect_prefixed([&] { tclplan::run_plan(pop, price, ambient, cfg); },
                    "InputError", "input: ");
  }
  SUBCASE("both budgets given") {
    cfg.energy_budget_kwh = 10.0;
    expect_prefixed([&] { tclplan::run_plan(pop, price, ambient, cfg); },
                    "InputError", "input: exactly one");
    CHECK_THROWS_AS(tclplan::run_plan(pop, price, ambient, cfg),
                    tclplan::InputError);
  }
  SUBCASE("no budget given") {
    cfg.tau_bar = -1.0;
    expect_prefixed([&] { tclplan::run_plan(pop, price, ambient, cfg); },
                    "InputError", "input: exactly one");
  }
  SUBCASE("horizon mismatch") {
    cfg.horizon = 1000.0;
    expect_prefixed([&] { tclplan::run_plan(pop, price, ambient, cfg); },
                    "InputError", "input: configured horizon");
  }
  SUBCASE("series horizons differ") {
    const StepSeries short_amb({0.0, 3600.0}, {30.0});
    expect_prefixed([&] { tclplan::run_plan(pop, price, short_amb, cfg); },
                    "InputError", "input: ");
  }
  SUBCASE("invalid population") {
    tclplan::Population bad = pop;
    bad.loads[0].alpha = -1.0;
    expect_prefixed([&] { tclplan::run_plan(bad, price, ambient, cfg); },
                    "InputError", "validate: ");
    CHECK_THROWS_AS(tclplan::run_plan(bad, price, ambient, cfg),
                    tclplan::InputError);
  }
  SUBCASE("budget below the feasible range") {
    cfg.tau_bar = 0.05;
    expect_prefixed([&] { tclplan::run_plan(pop, price, ambient, cfg); },
                    "InfeasibleBudgetError", "feasibility: ");
    CHECK_THROWS_AS(tclplan::run_plan(pop, price, ambient, cfg),
                    tclplan::InfeasibleBudgetError);
  }
  SUBCASE("budget above the feasible range") {
    cfg.tau_bar = 0.9;
    expect_prefixed([&] { tclplan::run_plan(pop, price, ambient, cfg); },
                    "InfeasibleBudgetError", "feasibility: ");
  }
}

TEST_CASE("file-level runs write a reproducible output bundle") {
  const fs::path in_dir = scratch_dir("inputs");
  write_hourly_csv(in_dir / "price.csv", "price_per_mwh", kPrices);
  write_hourly_csv(in_dir / "ambient.csv", "temperature_c", kAmbients);
  tclplan::save_population_json(demo_population(),
                                (in_dir / "pop.json").string());

  RunConfig cfg;
  cfg.price_path = (in_dir / "price.csv").string();
  cfg.ambient_path = (in_dir / "ambient.csv").string();
  cfg.population_path = (in_dir / "pop.json").string();
  cfg.tau_bar = 0.34;

  const fs::path out_a = scratch_dir("out_a");
  const fs::path out_b = scratch_dir("out_b");
  cfg.output_dir = out_a.string();
  const tclplan::RunArtifacts run_a = tclplan::run_plan_files(cfg);
  cfg.output_dir = out_b.string();
  tclplan::run_plan_files(cfg);

  const char* names[] = {"plan_aggregate.csv", "plan_controls.csv",
                         "plan_trajectories.csv", "plan_report"};
  for (const char* name : names) {
    REQUIRE(fs::exists(out_a / name));
    REQUIRE(fs::exists(out_b / name));
    CHECK(read_file(out_a / name) == read_file(out_b / name));
  }

  // Report carries the headline numbers.
  const std::string report = read_file(out_a / "plan_report");
  CHECK(report.find("population_size = 2") != std::string::npos);
  CHECK(report.find("horizon_s = 86400") != std::string::npos);
  CHECK(report.find("threshold_price = ") != std::string::npos);
  CHECK(report.find("on_set_measure_s = ") != std::string::npos);
  CHECK(report.find("cost_binary = ") != std::string::npos);
  CHECK(report == tclplan::format_plan_report(run_a.population,
                                              run_a.result));

  // Aggregate power re-derives exactly from the controls file: every row is
  // the per-unit electrical draw times the number of ON units, bit for bit.
  std::ifstream agg(out_a / "plan_aggregate.csv");
  std::ifstream ctl(out_a / "plan_controls.csv");
  std::string agg_line, ctl_line;
  std::getline(agg, agg_line);
  std::getline(ctl, ctl_line);
  CHECK(agg_line == "time_s,power_kw");
  CHECK(ctl_line == "time_s,u0,u1");
  const double p_elec = 14.0 / 2.5;
  std::size_t rows = 0;
  while (std::getline(agg, agg_line) && std::getline(ctl, ctl_line)) {
    ++rows;
    const std::size_t a_comma = agg_line.find(',');
    const double power = std::stod(agg_line.substr(a_comma + 1));
    int on = 0;
    std::size_t pos = ctl_line.find(',');
    while (pos != std::string::npos) {
      on += ctl_line[pos + 1] == '1' ? 1 : 0;
      pos = ctl_line.find(',', pos + 1);
    }
    CHECK(power == on * p_elec);
    // Time columns agree textually between the two files.
    CHECK(agg_line.substr(0, a_comma) ==
          ctl_line.substr(0, ctl_line.find(',')));
  }
  CHECK(rows == 1441);  // 24 h on a 60 s grid, endpoint included
}

TEST_CASE("synthetic populations are seed-deterministic") {
  const fs::path in_dir = scratch_dir("synth_inputs");
  write_hourly_csv(in_dir / "price.csv", "price_per_mwh", kPrices);
  write_hourly_csv(in_dir / "ambient.csv", "temperature_c", kAmbients);

  RunConfig cfg;
  cfg.price_path = (in_dir / "price.csv").string();
  cfg.ambient_path = (in_dir / "ambient.csv").string();
  cfg.synth_count = 5;
  cfg.seed = 7;
  cfg.tau_bar = 0.34;

  const tclplan::RunArtifacts a = tclplan::run_plan_files(cfg);
  const tclplan::RunArtifacts b = tclplan::run_plan_files(cfg);
  REQUIRE(a.population.size() == 5);
  REQUIRE(b.population.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(a.population.loads[i].alpha == b.population.loads[i].alpha);
    CHECK(a.population.loads[i].theta0 == b.population.loads[i].theta0);
    CHECK(a.population.loads[i].sigma0 == b.population.loads[i].sigma0);
  }
  CHECK(a.result.plan.cost == b.result.plan.cost);

  cfg.seed = 8;
  const tclplan::RunArtifacts c = tclplan::run_plan_files(cfg);
  bool any_differs = false;
  for (std::size_t i = 0; i < 5; ++i) {
    any_differs = any_differs ||
                  a.population.loads[i].alpha != c.population.loads[i].alpha;
  }
  CHECK(any_differs);
}

TEST_CASE("file-level input failures") {
  const fs::path in_dir = scratch_dir("bad_inputs");
  write_hourly_csv(in_dir / "price.csv", "price_per_mwh", kPrices);
  write_hourly_csv(in_dir / "ambient.csv", "temperature_c", kAmbients);

  RunConfig cfg;
  cfg.price_path = (in_dir / "price.csv").string();
  cfg.ambient_path = (in_dir / "ambient.csv").string();
  cfg.tau_bar = 0.34;

  SUBCASE("no population source") {
    expect_prefixed([&] { tclplan::run_plan_files(cfg); }, "InputError",
                    "input: either a population file");
  }
  SUBCASE("missing price file") {
    cfg.synth_count = 3;
    cfg.price_path = (in_dir / "nope.csv").string();
    expect_prefixed([&] { tclplan::run_plan_files(cfg); }, "InputError",
                    "input: cannot open");
  }
}
