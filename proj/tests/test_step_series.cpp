#include <doctest.h>

#include <cmath>
#include <vector>

#include "tclplan/errors.hpp"
#include "tclplan/step_series.hpp"
#include "test_support.hpp"

using tclplan::StepSeries;

TEST_CASE("construction rejects malformed inputs") {
  CHECK_THROWS_AS(StepSeries({1.0, 2.0}, {5.0}), tclplan::InputError);
  CHECK_THROWS_AS(StepSeries({0.0, 2.0, 2.0}, {5.0, 6.0}),
                  tclplan::InputError);
  CHECK_THROWS_AS(StepSeries({0.0, 2.0, 1.0}, {5.0, 6.0}),
                  tclplan::InputError);
  CHECK_THROWS_AS(StepSeries({0.0, 1.0}, {5.0, 6.0}), tclplan::InputError);
  CHECK_THROWS_AS(StepSeries({0.0}, {}), tclplan::InputError);
}

TEST_CASE("value is right-continuous with a closed horizon endpoint") {
  const StepSeries s({0.0, 1.0, 3.0, 4.0}, {10.0, 20.0, 30.0});
  CHECK(s.value(0.0) == 10.0);
  CHECK(s.value(1.0) == 20.0);          // right-continuous at breakpoints
  CHECK(s.value(3.0 - 1e-12) == 20.0);
  CHECK(s.value(3.0) == 30.0);
  CHECK(s.value(4.0) == 30.0);          // horizon endpoint uses last segment
  CHECK_THROWS_AS(s.value(-0.1), tclplan::InputError);
  CHECK_THROWS_AS(s.value(4.1), tclplan::InputError);
}

TEST_CASE("integral and time average are exact on breakpoints") {
  const StepSeries s({0.0, 1.0, 3.0, 4.0}, {10.0, 20.0, 30.0});
  CHECK(s.integral() == doctest::Approx(10.0 + 40.0 + 30.0).epsilon(1e-15));
  CHECK(s.integral(0.5, 3.5) ==
        doctest::Approx(0.5 * 10 + 2 * 20 + 0.5 * 30).epsilon(1e-15));
  CHECK(s.integral(1.0, 3.0) == doctest::Approx(40.0).epsilon(1e-15));
  CHECK(s.integral(2.0, 2.0) == 0.0);
  CHECK(s.time_average() == doctest::Approx(80.0 / 4.0).epsilon(1e-15));
  CHECK(s.min_value() == 10.0);
  CHECK(s.max_value() == 30.0);
}

TEST_CASE("integral over subinterval matches fine quadrature on random series") {
  test_support::Rng rng(311);
  for (int trial = 0; trial < 20; ++trial) {
    const StepSeries s =
        test_support::random_series(rng, 24, 3600.0, -5.0, 45.0);
    const double a = rng.uniform(0.0, s.horizon());
    const double b = rng.uniform(a, s.horizon());
    const std::size_t panels = 200000;
    const double reference = test_support::midpoint_integral(
        [&](double t) { return s.value(t); }, a, b, panels);
    // Midpoint quadrature misassigns at most one panel per jump.
    const double bound =
        25.0 * ((b - a) / static_cast<double>(panels)) * 50.0 + 1e-9;
    CHECK(std::abs(s.integral(a, b) - reference) < bound);
  }
}

TEST_CASE("constant factory spans the horizon with one segment") {
  const StepSeries s = StepSeries::constant(86400.0, 32.0);
  CHECK(s.segment_count() == 1);
  CHECK(s.horizon() == 86400.0);
  CHECK(s.value(0.0) == 32.0);
  CHECK(s.value(86400.0) == 32.0);
}

TEST_CASE("binary and convex-range classification") {
  CHECK(tclplan::is_binary(StepSeries({0.0, 1.0, 2.0}, {0.0, 1.0})));
  CHECK_FALSE(tclplan::is_binary(StepSeries({0.0, 1.0, 2.0}, {0.0, 0.5})));
  CHECK(tclplan::is_convex_range(StepSeries({0.0, 1.0, 2.0}, {0.25, 1.0})));
  CHECK_FALSE(
      tclplan::is_convex_range(StepSeries({0.0, 1.0, 2.0}, {-0.1, 0.5})));
  CHECK_FALSE(
      tclplan::is_convex_range(StepSeries({0.0, 1.0, 2.0}, {0.5, 1.1})));
}

TEST_CASE("product integral matches manual evaluation over merged segments") {
  const StepSeries price({0.0, 2.0, 4.0}, {10.0, 30.0});
  const StepSeries control({0.0, 1.0, 3.0, 4.0}, {1.0, 0.0, 1.0});
  // Segments: [0,1) 10*1, [1,2) 10*0, [2,3) 30*0, [3,4) 30*1.
  CHECK(tclplan::integral_product(price, control, 0.0, 4.0) ==
        doctest::Approx(10.0 + 30.0).epsilon(1e-15));
  CHECK(tclplan::integral_product(price, control, 0.5, 3.5) ==
        doctest::Approx(0.5 * 10 + 0.5 * 30).epsilon(1e-15));
}

TEST_CASE("product integral matches quadrature on random pairs") {
  test_support::Rng rng(901);
  for (int trial = 0; trial < 10; ++trial) {
    const StepSeries a =
        test_support::random_series(rng, 24, 3600.0, 5.0, 60.0);
    const StepSeries b = test_support::random_series(rng, 96, 900.0, 0.0, 1.0);
    const std::size_t panels = 400000;
    const double reference = test_support::midpoint_integral(
        [&](double t) { return a.value(t) * b.value(t); }, 0.0, 86400.0,
        panels);
    const double got = tclplan::integral_product(a, b, 0.0, 86400.0);
    // One misassigned panel per jump of the product, 120 jumps at most.
    const double bound = 121.0 * (86400.0 / static_cast<double>(panels)) *
                             60.0 +
                         1e-9;
    CHECK(std::abs(got - reference) < bound);
  }
}
