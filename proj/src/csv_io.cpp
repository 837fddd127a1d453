#include "tclplan/csv_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tclplan/errors.hpp"

namespace tclplan {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Days since 1970-01-01 for a proleptic Gregorian date (valid for the
// forecasting horizons at hand; exact integer arithmetic throughout).
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy =
      static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool in_range(int v, int lo, int hi) { return v >= lo && v <= hi; }

double parse_number(const std::string& text, std::size_t row,
                    const std::string& column) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != t.size()) {
    throw InputError("row " + std::to_string(row) + ": cannot parse " +
                     column + " value '" + text + "'");
  }
  return value;
}

}  // namespace

std::int64_t parse_iso8601(const std::string& text) {
  const std::string t = trim(text);
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char sep = 0;
  char tail[2] = {0, 0};
  const int n = std::sscanf(t.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%1s", &y, &mo,
                            &d, &sep, &h, &mi, &s, tail);
  const bool tail_ok = n == 7 || (n == 8 && tail[0] == 'Z');
  if (!tail_ok || (sep != 'T' && sep != ' ') || !in_range(mo, 1, 12) ||
      !in_range(d, 1, 31) || !in_range(h, 0, 23) || !in_range(mi, 0, 59) ||
      !in_range(s, 0, 60)) {
    throw InputError("cannot parse timestamp '" + text +
                     "' (expected YYYY-MM-DDTHH:MM:SS)");
  }
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

StepSeries load_series_csv(const std::string& path,
                           const std::string& value_column,
                           bool require_positive) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open '" + path + "'");
  }

  std::string line;
  std::size_t row = 0;
  const std::string expected_header = "start_time_iso8601," + value_column;

  std::vector<std::int64_t> stamps;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;

    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();

    if (row == 1) {
      if (cells.size() != 2 || trim(cells[0]) != "start_time_iso8601" ||
          trim(cells[1]) != value_column) {
        throw InputError("row 1: expected header '" + expected_header +
                         "', got '" + line + "'");
      }
      continue;
    }
    if (cells.size() != 2) {
      throw InputError("row " + std::to_string(row) +
                       ": expected 2 columns, got " +
                       std::to_string(cells.size()));
    }

    std::int64_t stamp = 0;
    try {
      stamp = parse_iso8601(cells[0]);
    } catch (const InputError& e) {
      throw InputError("row " + std::to_string(row) + ": " + e.what());
    }
    const double value = parse_number(cells[1], row, value_column);
    if (require_positive && value <= 0.0) {
      throw InputError("row " + std::to_string(row) + ": " + value_column +
                       " must be positive, got " + cells[1]);
    }
    if (!stamps.empty() && stamp <= stamps.back()) {
      throw InputError("row " + std::to_string(row) +
                       ": timestamps must be strictly increasing");
    }
    stamps.push_back(stamp);
    values.push_back(value);
  }

  if (stamps.size() < 2) {
    throw InputError("'" + path +
                     "' needs at least two data rows to fix the segment "
                     "length");
  }
  const std::int64_t spacing = stamps[1] - stamps[0];
  for (std::size_t i = 2; i < stamps.size(); ++i) {
    if (stamps[i] - stamps[i - 1] != spacing) {
      throw InputError(
          "row " + std::to_string(i + 2) +
          ": rows must be equally spaced (expected " +
          std::to_string(spacing) + " s, got " +
          std::to_string(stamps[i] - stamps[i - 1]) + " s)");
    }
  }

  std::vector<double> breakpoints;
  breakpoints.reserve(stamps.size() + 1);
  for (std::int64_t stamp : stamps) {
    breakpoints.push_back(static_cast<double>(stamp - stamps.front()));
  }
  breakpoints.push_back(
      static_cast<double>(stamps.back() - stamps.front() + spacing));
  return StepSeries(std::move(breakpoints), std::move(values));
}

StepSeries load_price_csv(const std::string& path) {
  return load_series_csv(path, "price_per_mwh", /*require_positive=*/true);
}

StepSeries load_ambient_csv(const std::string& path) {
  return load_series_csv(path, "temperature_c", /*require_positive=*/false);
}

Population load_population_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open '" + path + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_array() || doc.empty()) {
    throw InputError("'" + path + "' must hold a non-empty JSON array");
  }

  Population pop;
  pop.loads.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    if (!item.is_object()) {
      throw InputError("load " + std::to_string(i) + ": expected an object");
    }
    TclParams p;
    const auto field = [&](const char* key) {
      if (!item.contains(key) || !item[key].is_number()) {
        throw InputError("load " + std::to_string(i) +
                         ": missing numeric field '" + key + "'");
      }
      return item[key].get<double>();
    };
    p.alpha = field("alpha");
    p.beta = field("beta");
    p.power_thermal = field("power_thermal");
    p.efficiency = field("efficiency");
    p.setpoint = field("setpoint");
    p.delta = field("delta");
    p.theta0 = field("theta0");
    const double sigma = field("sigma0");
    if (sigma != 0.0 && sigma != 1.0) {
      throw InputError("load " + std::to_string(i) +
                       ": sigma0 must be 0 or 1");
    }
    p.sigma0 = static_cast<int>(sigma);
    pop.loads.push_back(p);
  }
  return pop;
}

void save_population_json(const Population& pop, const std::string& path) {
  nlohmann::json doc = nlohmann::json::array();
  for (const TclParams& p : pop.loads) {
    doc.push_back({{"alpha", p.alpha},
                   {"beta", p.beta},
                   {"power_thermal", p.power_thermal},
                   {"efficiency", p.efficiency},
                   {"setpoint", p.setpoint},
                   {"delta", p.delta},
                   {"theta0", p.theta0},
                   {"sigma0", p.sigma0}});
  }
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot write '" + path + "'");
  }
  out << doc.dump(2) << '\n';
}

}  // namespace tclplan
