#include <doctest.h>

#include <cmath>
#include <optional>
#include <vector>

#include "tclplan/dynamics.hpp"
#include "tclplan/errors.hpp"
#include "tclplan/step_series.hpp"
#include "test_support.hpp"

using tclplan::ControlSignal;
using tclplan::StepSeries;
using tclplan::TclParams;
using tclplan::Trajectory;
using test_support::make_load;

namespace {

const TclParams kLoad = make_load(4.2e-3, 8.5e-3, 20.0, 0.5, 20.2, 0);

}  // namespace

TEST_CASE("single exact step agrees with a fine explicit integrator") {
  test_support::Rng rng(1201);
  for (int trial = 0; trial < 25; ++trial) {
    const double theta0 = rng.uniform(15.0, 25.0);
    const double ambient = rng.uniform(24.0, 38.0);
    const double u = rng.integer(0, 1);
    const double dt = rng.uniform(10.0, 1800.0);

    const StepSeries amb = StepSeries::constant(dt, ambient);
    const StepSeries ctl = StepSeries::constant(dt, u);
    const double reference = test_support::euler_final_temperature(
        kLoad, amb, ctl, theta0, 0.0, dt, 1e-3);
    const double got = tclplan::step_exact(kLoad, theta0, ambient, u, dt);
    CHECK(std::abs(got - reference) < 5e-5);
  }
}

TEST_CASE("exact step matches the closed-form relaxation") {
  const double theta0 = 22.0;
  const double ambient = 33.0;
  const double dt = 600.0;
  // ON: the state relaxes toward ambient - beta*P/alpha.
  const double ss = 33.0 - 8.5e-3 * 14.0 / 4.2e-3;
  const double expected = ss + (theta0 - ss) * std::exp(-4.2e-3 * dt);
  CHECK(tclplan::step_exact(kLoad, theta0, ambient, 1.0, dt) ==
        doctest::Approx(expected).epsilon(1e-15));
  // Zero time: identity.
  CHECK(tclplan::step_exact(kLoad, theta0, ambient, 1.0, 0.0) == theta0);
}

TEST_CASE("boundary crossing times are exact and unique") {
  const double ambient = 33.0;

  SUBCASE("warming OFF load reaches the upper bound") {
    const double theta0 = 20.0;
    const double target = kLoad.upper_bound();  // 20.5
    const auto t = tclplan::crossing_time(kLoad, theta0, ambient, 0.0, target);
    REQUIRE(t.has_value());
    // Verify by stepping exactly that long.
    CHECK(tclplan::step_exact(kLoad, theta0, ambient, 0.0, *t) ==
          doctest::Approx(target).epsilon(1e-12));
    // And against the logarithm formula.
    CHECK(*t == doctest::Approx(std::log((theta0 - ambient) /
                                         (target - ambient)) /
                                4.2e-3)
                    .epsilon(1e-12));
  }

  SUBCASE("cooling ON load reaches the lower bound") {
    const double theta0 = 20.4;
    const double target = kLoad.lower_bound();  // 19.5
    const auto t = tclplan::crossing_time(kLoad, theta0, ambient, 1.0, target);
    REQUIRE(t.has_value());
    CHECK(tclplan::step_exact(kLoad, theta0, ambient, 1.0, *t) ==
          doctest::Approx(target).epsilon(1e-12));
  }

  SUBCASE("unreachable targets yield no crossing") {
    // OFF load cannot cool down.
    CHECK_FALSE(tclplan::crossing_time(kLoad, 20.0, ambient, 0.0, 19.5)
                    .has_value());
    // ON load with steady state above the target never descends that far.
    const double deep = 33.0 - 8.5e-3 * 14.0 / 4.2e-3 - 1.0;
    CHECK_FALSE(
        tclplan::crossing_time(kLoad, 20.0, ambient, 1.0, deep).has_value());
    // Asymptote: approaching ambient exactly never attains it.
    CHECK_FALSE(tclplan::crossing_time(kLoad, 20.0, ambient, 0.0, ambient)
                    .has_value());
  }

  SUBCASE("already at the target") {
    const auto t = tclplan::crossing_time(kLoad, 20.5, ambient, 0.0, 20.5);
    REQUIRE(t.has_value());
    CHECK(*t == 0.0);
  }
}

TEST_CASE("prescribed-control simulation matches the fine integrator") {
  test_support::Rng rng(1301);
  const double horizon = 4.0 * 3600.0;
  for (int trial = 0; trial < 5; ++trial) {
    const StepSeries ambient =
        test_support::random_series(rng, 8, 1800.0, 26.0, 36.0);
    // Random binary control on an unaligned 1000 s pattern.
    std::vector<double> bp;
    std::vector<double> val;
    for (int k = 0; k < 15; ++k) {
      bp.push_back(k * 960.0);
      val.push_back(rng.integer(0, 1));
    }
    bp.push_back(horizon);
    const ControlSignal control(bp, val);

    const Trajectory got =
        tclplan::simulate_with_control(kLoad, ambient, control, 60.0);
    REQUIRE(got.values.size() == 241);
    const double reference = test_support::euler_final_temperature(
        kLoad, ambient, control, kLoad.theta0, 0.0, horizon, 1e-3);
    CHECK(std::abs(got.values.back() - reference) < 2e-4);

    // Spot-check an interior sample too.
    const double mid = test_support::euler_final_temperature(
        kLoad, ambient, control, kLoad.theta0, 0.0, 7200.0, 1e-3);
    CHECK(std::abs(got.values[120] - mid) < 2e-4);
  }
}

TEST_CASE("grid must divide the horizon") {
  const StepSeries ambient = StepSeries::constant(3600.0, 32.0);
  const ControlSignal off = ControlSignal::constant(3600.0, 0.0);
  CHECK_NOTHROW(tclplan::simulate_with_control(kLoad, ambient, off, 600.0));
  CHECK_THROWS_AS(
      tclplan::simulate_with_control(kLoad, ambient, off, 7.0),
      tclplan::InputError);
}

TEST_CASE("thermostat cycling switches exactly at the band edges") {
  const double horizon = 6.0 * 3600.0;
  const StepSeries ambient = StepSeries::constant(horizon, 33.0);
  TclParams p = kLoad;
  p.theta0 = 20.2;
  p.sigma0 = 0;

  const tclplan::HystereticResult r =
      tclplan::simulate_hysteretic(p, ambient, 60.0);

  // The state stays inside the band.
  for (double v : r.trajectory.values) {
    CHECK(v >= p.lower_bound() - 1e-9);
    CHECK(v <= p.upper_bound() + 1e-9);
  }
  // Control is binary and alternates.
  CHECK(tclplan::is_binary(r.control));
  REQUIRE(r.control.segment_count() > 3);
  for (std::size_t k = 1; k < r.control.segment_count(); ++k) {
    CHECK(r.control.segment_value(k) != r.control.segment_value(k - 1));
  }

  // First switch: OFF from 20.2 warms to the upper bound 20.5.
  const double expected_first =
      std::log((20.2 - 33.0) / (20.5 - 33.0)) / p.alpha;
  CHECK(r.control.segment_end(0) ==
        doctest::Approx(expected_first).epsilon(1e-12));

  // Steady cycling: ON leg 20.5 -> 19.5 toward the ON steady state, OFF leg
  // 19.5 -> 20.5 toward ambient; both leg lengths from the log formula.
  const double ss_on = 33.0 - p.beta * p.power_thermal / p.alpha;
  const double on_leg =
      std::log((20.5 - ss_on) / (19.5 - ss_on)) / p.alpha;
  const double off_leg = std::log((19.5 - 33.0) / (20.5 - 33.0)) / p.alpha;
  CHECK(r.control.segment_length(1) == doctest::Approx(on_leg).epsilon(1e-9));
  CHECK(r.control.segment_length(2) ==
        doctest::Approx(off_leg).epsilon(1e-9));

  // Initial mode override: starting exactly at the upper bound turns ON even
  // if sigma0 says OFF.
  TclParams at_top = p;
  at_top.theta0 = at_top.upper_bound();
  at_top.sigma0 = 0;
  const tclplan::HystereticResult r2 =
      tclplan::simulate_hysteretic(at_top, ambient, 60.0);
  CHECK(r2.control.segment_value(0) == 1.0);
}

TEST_CASE("thermostat handles the ambient asymptote and rejects non-cooling") {
  TclParams p = kLoad;
  p.theta0 = 20.0;
  const double horizon = 3600.0;

  // Ambient exactly at the upper bound: an OFF load approaches it forever.
  const StepSeries at_bound = StepSeries::constant(horizon, p.upper_bound());
  const tclplan::HystereticResult r =
      tclplan::simulate_hysteretic(p, at_bound, 60.0);
  CHECK(r.control.segment_count() == 1);
  CHECK(r.control.segment_value(0) == 0.0);
  CHECK(r.trajectory.values.back() < p.upper_bound());

  // Ambient strictly below the upper bound is rejected.
  const StepSeries below = StepSeries::constant(horizon, p.upper_bound() - 0.2);
  CHECK_THROWS_AS(tclplan::simulate_hysteretic(p, below, 60.0),
                  tclplan::InputError);
}

TEST_CASE("band-held simulation slides with the exact fractional level") {
  const double horizon = 4.0 * 3600.0;
  const StepSeries ambient = StepSeries::constant(horizon, 33.0);
  TclParams p = kLoad;
  p.theta0 = 20.2;

  SUBCASE("upper boundary under base OFF") {
    const ControlSignal off = ControlSignal::constant(horizon, 0.0);
    const tclplan::ReflectedResult r =
        tclplan::simulate_reflected(p, ambient, off, 60.0);

    // Hits the upper bound at the free warming time, then holds.
    const double hit = std::log((20.2 - 33.0) / (20.5 - 33.0)) / p.alpha;
    REQUIRE(r.episodes.size() == 1);
    CHECK(r.episodes[0].begin == doctest::Approx(hit).epsilon(1e-12));
    CHECK(r.episodes[0].end == horizon);
    CHECK(r.episodes[0].at_upper);
    CHECK(r.episodes[0].boundary == 20.5);

    // Holding level: alpha*(ambient - U) / (beta*P).
    const double hold = 4.2e-3 * (33.0 - 20.5) / (8.5e-3 * 14.0);
    CHECK(r.effective_control.value(horizon) ==
          doctest::Approx(hold).epsilon(1e-12));

    // The trajectory pins the boundary after the hit.
    CHECK(r.trajectory.values.back() == doctest::Approx(20.5).epsilon(1e-12));
    for (std::size_t k = 0; k < r.trajectory.values.size(); ++k) {
      if (r.trajectory.time(k) >= hit) {
        CHECK(r.trajectory.values[k] == doctest::Approx(20.5).epsilon(1e-9));
      }
    }
  }

  SUBCASE("lower boundary under base ON") {
    const ControlSignal on = ControlSignal::constant(horizon, 1.0);
    const tclplan::ReflectedResult r =
        tclplan::simulate_reflected(p, ambient, on, 60.0);
    REQUIRE(r.episodes.size() == 1);
    CHECK_FALSE(r.episodes[0].at_upper);
    CHECK(r.episodes[0].boundary == 19.5);
    const double hold = 4.2e-3 * (33.0 - 19.5) / (8.5e-3 * 14.0);
    CHECK(r.effective_control.value(horizon) ==
          doctest::Approx(hold).epsilon(1e-12));
    CHECK(r.trajectory.values.back() == doctest::Approx(19.5).epsilon(1e-12));
  }

  SUBCASE("wide band reduces to the free simulation") {
    TclParams wide = p;
    wide.delta = 30.0;
    wide.theta0 = 20.2;
    const ControlSignal off = ControlSignal::constant(horizon, 0.0);
    const tclplan::ReflectedResult r =
        tclplan::simulate_reflected(wide, ambient, off, 60.0);
    CHECK(r.episodes.empty());
    const Trajectory free =
        tclplan::simulate_with_control(wide, ambient, off, 60.0);
    for (std::size_t k = 0; k < free.values.size(); ++k) {
      CHECK(r.trajectory.values[k] ==
            doctest::Approx(free.values[k]).epsilon(1e-12));
    }
  }

  SUBCASE("holding an unreachable boundary level is rejected") {
    // Very hot ambient: holding the upper bound needs u > 1.
    // alpha*(amb - U)/(beta*P) > 1 <=> amb > U + beta*P/alpha ~ 48.8.
    const StepSeries hot = StepSeries::constant(horizon, 55.0);
    const ControlSignal off = ControlSignal::constant(horizon, 0.0);
    CHECK_THROWS_AS(tclplan::simulate_reflected(p, hot, off, 60.0),
                    tclplan::SlidingInfeasibleError);
  }
}

TEST_CASE("band-held trajectory matches a manual piecewise construction") {
  // Two ambient segments, both above the upper bound: the hold starts at
  // t = 0 and survives the ambient switch as one continuous episode whose
  // fractional level re-tracks the new ambient.
  const double horizon = 2.0 * 3600.0;
  const StepSeries ambient({0.0, 3600.0, horizon}, {33.0, 26.0});
  TclParams p = kLoad;
  p.theta0 = 20.5;  // start at the upper bound

  const ControlSignal off = ControlSignal::constant(horizon, 0.0);
  const tclplan::ReflectedResult r =
      tclplan::simulate_reflected(p, ambient, off, 60.0);

  // Ambient 26 > U = 20.5 still warms, so the episode spans the horizon.
  REQUIRE_FALSE(r.episodes.empty());
  CHECK(r.episodes[0].begin == 0.0);
  CHECK(r.episodes[0].end == doctest::Approx(horizon).epsilon(1e-9));
  CHECK(r.episodes.size() == 1);
  CHECK(r.trajectory.values.back() == doctest::Approx(20.5).epsilon(1e-12));

  // The held level tracks the ambient segment: two distinct fractional
  // values.
  const double hold1 = 4.2e-3 * (33.0 - 20.5) / (8.5e-3 * 14.0);
  const double hold2 = 4.2e-3 * (26.0 - 20.5) / (8.5e-3 * 14.0);
  CHECK(r.effective_control.value(1800.0) ==
        doctest::Approx(hold1).epsilon(1e-12));
  CHECK(r.effective_control.value(5400.0) ==
        doctest::Approx(hold2).epsilon(1e-12));
}

TEST_CASE("multi-segment exact advance equals the sampled simulation") {
  test_support::Rng rng(7177);
  const double horizon = 3.0 * 3600.0;
  const StepSeries ambient =
      test_support::random_series(rng, 6, 1800.0, 26.0, 36.0);
  std::vector<double> bp{0.0, 700.0, 2900.0, 5000.0, horizon};
  const ControlSignal control(bp, {1.0, 0.0, 1.0, 0.0});

  double theta = kLoad.theta0;
  const Trajectory sim =
      tclplan::simulate_with_control(kLoad, ambient, control, 30.0);
  // Chain advance_exact over irregular spans and compare at shared times.
  theta = tclplan::advance_exact(kLoad, ambient, control, kLoad.theta0, 0.0,
                                 900.0);
  CHECK(theta == doctest::Approx(sim.values[30]).epsilon(1e-12));
  theta = tclplan::advance_exact(kLoad, ambient, control, theta, 900.0,
                                 4500.0);
  CHECK(theta == doctest::Approx(sim.values[150]).epsilon(1e-12));
  theta = tclplan::advance_exact(kLoad, ambient, control, theta, 4500.0,
                                 horizon);
  CHECK(theta == doctest::Approx(sim.values.back()).epsilon(1e-12));
}
