#pragma once

#include <cstdint>
#include <string>

#include "tclplan/model.hpp"
#include "tclplan/step_series.hpp"

namespace tclplan {

// Parses "YYYY-MM-DDTHH:MM:SS" (optional trailing 'Z') to seconds since the
// Unix epoch, independent of the local time zone.  Throws InputError.
std::int64_t parse_iso8601(const std::string& text);

// Loads a piecewise-constant series from a two-column CSV file with header
// "start_time_iso8601,<value_column>".  Timestamps must be strictly
// increasing and equally spaced; the final segment is assigned the same
// length as the others.  Breakpoints are returned in seconds relative to the
// first timestamp.  Errors carry 1-based row numbers.
StepSeries load_series_csv(const std::string& path,
                           const std::string& value_column,
                           bool require_positive);

// Price forecast: header "start_time_iso8601,price_per_mwh", values > 0.
StepSeries load_price_csv(const std::string& path);

// Ambient forecast: header "start_time_iso8601,temperature_c".
StepSeries load_ambient_csv(const std::string& path);

// Loads a population from a JSON array of objects with keys alpha, beta,
// power_thermal, efficiency, setpoint, delta, theta0, sigma0.
Population load_population_json(const std::string& path);

// Serializes a population to the same JSON layout (pretty-printed).
void save_population_json(const Population& pop, const std::string& path);

}  // namespace tclplan
