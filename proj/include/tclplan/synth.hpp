#pragma once

#include <cstdint>

#include "tclplan/model.hpp"

namespace tclplan {

// Ranges for the synthetic population generator.  Defaults describe
// residential air conditioners on a summer day: thermal time constants of a
// few minutes, narrow comfort bands, shared rated power and efficiency.
struct SynthConfig {
  double alpha_min = 4.0e-3;
  double alpha_max = 4.5e-3;
  double beta_min = 8.4e-3;
  double beta_max = 8.6e-3;
  double setpoint_min = 19.0;
  double setpoint_max = 22.0;
  double delta_min = 0.1;
  double delta_max = 1.1;
  double power_thermal = 14.0;
  double efficiency = 2.5;
};

// Draws a heterogeneous population of `count` loads.  The generator is fully
// deterministic in (count, seed, config): the same inputs give bitwise the
// same population on any platform, because draws come from a fixed-width
// mt19937_64 stream mapped to [0,1) with a fixed 53-bit ladder rather than
// through distribution objects.
Population synth_population(std::size_t count, std::uint64_t seed,
                            const SynthConfig& config = SynthConfig{});

}  // namespace tclplan
