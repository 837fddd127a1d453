#include "tclplan/model.hpp"

#include <cmath>
#include <sstream>

#include "tclplan/errors.hpp"

namespace tclplan {

std::vector<std::string> validate_params(const TclParams& p) {
  std::vector<std::string> out;
  auto bad = [&out](const std::string& msg) { out.push_back(msg); };
  if (!(p.alpha > 0.0) || !std::isfinite(p.alpha)) bad("alpha must be > 0");
  if (!(p.beta > 0.0) || !std::isfinite(p.beta)) bad("beta must be > 0");
  if (!(p.power_thermal > 0.0) || !std::isfinite(p.power_thermal)) {
    bad("power_thermal must be > 0");
  }
  if (!(p.efficiency > 0.0) || !std::isfinite(p.efficiency)) {
    bad("efficiency must be > 0");
  }
  if (!(p.delta > 0.0) || !std::isfinite(p.delta)) bad("delta must be > 0");
  if (!std::isfinite(p.setpoint)) bad("setpoint must be finite");
  if (!std::isfinite(p.theta0)) {
    bad("theta0 must be finite");
  } else if (p.delta > 0.0 && (p.theta0 < p.lower_bound() - kTempEps ||
                               p.theta0 > p.upper_bound() + kTempEps)) {
    bad("theta0 must lie inside the comfort band");
  }
  if (p.sigma0 != 0 && p.sigma0 != 1) bad("sigma0 must be 0 or 1");
  return out;
}

double Population::shared_thermal_power() const {
  if (loads.empty()) throw InputError("population is empty");
  double p = loads.front().power_thermal;
  for (const TclParams& l : loads) {
    if (l.power_thermal != p) {
      throw InputError("loads must share power_thermal");
    }
  }
  return p;
}

double Population::shared_efficiency() const {
  if (loads.empty()) throw InputError("population is empty");
  double eta = loads.front().efficiency;
  for (const TclParams& l : loads) {
    if (l.efficiency != eta) throw InputError("loads must share efficiency");
  }
  return eta;
}

double Population::shared_electrical_power() const {
  return shared_thermal_power() / shared_efficiency();
}

double Population::max_upper_bound() const {
  if (loads.empty()) throw InputError("population is empty");
  double u = loads.front().upper_bound();
  for (const TclParams& l : loads) u = std::max(u, l.upper_bound());
  return u;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const std::string& v : violations) os << v << '\n';
  return os.str();
}

ValidationReport validate_population(const Population& pop,
                                     const ForecastSeries& ambient) {
  ValidationReport report;
  if (pop.loads.empty()) {
    report.violations.push_back("population is empty");
    return report;
  }
  for (std::size_t i = 0; i < pop.loads.size(); ++i) {
    for (const std::string& msg : validate_params(pop.loads[i])) {
      report.violations.push_back("load " + std::to_string(i) + ": " + msg);
    }
  }
  const double p = pop.loads.front().power_thermal;
  const double eta = pop.loads.front().efficiency;
  for (std::size_t i = 1; i < pop.loads.size(); ++i) {
    if (pop.loads[i].power_thermal != p) {
      report.violations.push_back("load " + std::to_string(i) +
                                  ": power_thermal differs from load 0");
    }
    if (pop.loads[i].efficiency != eta) {
      report.violations.push_back("load " + std::to_string(i) +
                                  ": efficiency differs from load 0");
    }
  }
  // Cooling regime: ambient must not fall below any load's upper bound,
  // otherwise hysteretic cycling and boundary holding are ill-defined.
  double max_u = pop.loads.front().upper_bound();
  for (const TclParams& l : pop.loads) max_u = std::max(max_u, l.upper_bound());
  if (ambient.min_value() < max_u - kTempEps) {
    std::ostringstream os;
    os << "ambient forecast dips to " << ambient.min_value()
       << " degC, below the highest upper comfort bound " << max_u
       << " degC (cooling-season assumption violated)";
    report.violations.push_back(os.str());
  }
  return report;
}

void require_valid(const Population& pop, const ForecastSeries& ambient) {
  ValidationReport report = validate_population(pop, ambient);
  if (!report.ok()) throw InputError("invalid inputs:\n" + report.to_string());
}

EnergyBudget EnergyBudget::from_energy_kwh(double kwh, const Population& pop,
                                           double horizon) {
  if (!(kwh >= 0.0) || !std::isfinite(kwh)) {
    throw InputError("budget energy must be >= 0");
  }
  const double p = pop.shared_thermal_power();
  const double eta = pop.shared_efficiency();
  EnergyBudget b;
  b.energy_kwh = kwh;
  b.tau_load_seconds = eta * kwh * kSecondsPerHour / p;
  b.tau_bar = b.tau_load_seconds /
              (static_cast<double>(pop.size()) * horizon);
  return b;
}

EnergyBudget EnergyBudget::from_tau_bar(double tau_bar, const Population& pop,
                                        double horizon) {
  if (!(tau_bar >= 0.0) || !std::isfinite(tau_bar)) {
    throw InputError("tau_bar must be >= 0");
  }
  const double p = pop.shared_thermal_power();
  const double eta = pop.shared_efficiency();
  EnergyBudget b;
  b.tau_bar = tau_bar;
  b.tau_load_seconds = tau_bar * static_cast<double>(pop.size()) * horizon;
  b.energy_kwh = b.tau_load_seconds * p / (eta * kSecondsPerHour);
  return b;
}

}  // namespace tclplan
