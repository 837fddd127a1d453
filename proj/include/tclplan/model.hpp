#pragma once

#include <string>
#include <vector>

#include "tclplan/step_series.hpp"

namespace tclplan {

// Shared numeric tolerances.  Times are seconds, temperatures Celsius,
// power kW, prices currency per MWh.
inline constexpr double kTimeEps = 1e-9;
inline constexpr double kTempEps = 1e-9;
inline constexpr double kKwSecondsPerMwh = 3.6e6;
inline constexpr double kSecondsPerHour = 3600.0;

// Thermal and contract parameters of one load (an air conditioner modeled
// as a first-order thermal mass with hysteretic switching).
struct TclParams {
  double alpha = 0.0;          // thermal drift rate, 1/s
  double beta = 0.0;           // cooling gain, degC/(kW*s)
  double power_thermal = 0.0;  // P: thermal power drawn when ON, kW
  double efficiency = 0.0;     // eta: coefficient of performance
  double setpoint = 0.0;       // s0, degC
  double delta = 0.0;          // half-width of the comfort band, degC
  double theta0 = 0.0;         // initial indoor temperature, degC
  int sigma0 = 0;              // initial mode: 0 = OFF, 1 = ON

  double lower_bound() const { return setpoint - delta; }
  double upper_bound() const { return setpoint + delta; }
  double electrical_power() const { return power_thermal / efficiency; }

  // Equilibrium temperature under constant ambient and control level u.
  double steady_state(double ambient, double u) const {
    return ambient - beta * power_thermal * u / alpha;
  }
};

// Messages are empty when the parameters are self-consistent.
std::vector<std::string> validate_params(const TclParams& p);

struct Population {
  std::vector<TclParams> loads;

  std::size_t size() const { return loads.size(); }
  // All loads must share P and eta; these throw InputError otherwise.
  double shared_thermal_power() const;
  double shared_efficiency() const;
  double shared_electrical_power() const;
  double max_upper_bound() const;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

// Structural checks on every load plus population-level and scenario-level
// assumptions: shared P/eta, theta0 inside the band, and (cooling regime)
// every ambient value at or above every upper comfort bound.
ValidationReport validate_population(const Population& pop,
                                     const ForecastSeries& ambient);

// Throwing form used at pipeline entry.
void require_valid(const Population& pop, const ForecastSeries& ambient);

// Total-energy budget for the population over the horizon, carried in the
// three equivalent forms used by the planner.
struct EnergyBudget {
  double energy_kwh = 0.0;        // electrical energy E
  double tau_load_seconds = 0.0;  // tau = eta*E/P: total ON time, load*s
  double tau_bar = 0.0;           // tau / (N*T), dimensionless

  static EnergyBudget from_energy_kwh(double kwh, const Population& pop,
                                      double horizon);
  static EnergyBudget from_tau_bar(double tau_bar, const Population& pop,
                                   double horizon);
};

}  // namespace tclplan
