#include "tclplan/synth.hpp"

#include <random>

#include "tclplan/errors.hpp"

namespace tclplan {

namespace {

// Uniform double in [0,1) using the top 53 bits of one engine output.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit(rng);
}

}  // namespace

Population synth_population(std::size_t count, std::uint64_t seed,
                            const SynthConfig& config) {
  if (count == 0) {
    throw InputError("population size must be positive");
  }
  std::mt19937_64 rng(seed);
  Population pop;
  pop.loads.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    TclParams p;
    p.alpha = uniform(rng, config.alpha_min, config.alpha_max);
    p.beta = uniform(rng, config.beta_min, config.beta_max);
    p.setpoint = uniform(rng, config.setpoint_min, config.setpoint_max);
    p.delta = uniform(rng, config.delta_min, config.delta_max);
    p.power_thermal = config.power_thermal;
    p.efficiency = config.efficiency;
    p.theta0 = p.lower_bound() + unit(rng) * 2.0 * p.delta;
    p.sigma0 = unit(rng) < 0.5 ? 0 : 1;
    pop.loads.push_back(p);
  }
  return pop;
}

}  // namespace tclplan
