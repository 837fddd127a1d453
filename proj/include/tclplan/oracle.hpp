#pragma once

#include <vector>

#include "tclplan/model.hpp"

namespace tclplan {

// Tiny discretized instance for the exhaustive reference optimizer used in
// tests: equal slots, per-slot price and ambient, an ON-slot budget, and
// optional comfort enforcement.  The budget is either a fixed ON-slot count
// per load (total_on_slots < 0) or a population total to be split across
// loads by the optimizer (total_on_slots >= 0, per-load counts ignored).
struct DiscreteInstance {
  double slot_seconds = 0.0;
  std::vector<double> price;    // per slot, currency per MWh
  std::vector<double> ambient;  // per slot, degC
  std::vector<TclParams> loads;
  std::vector<int> on_slots_per_load;
  int total_on_slots = -1;
  bool enforce_comfort = true;
};

// One candidate schedule: slot indicators per load.
using ControlMatrix = std::vector<std::vector<int>>;

struct BruteForceResult {
  double min_cost = 0.0;
  std::vector<ControlMatrix> argmin;  // every optimal matrix (up to the cap)
  bool argmin_truncated = false;
  unsigned long long masks_evaluated = 0;

  bool unique() const { return argmin.size() == 1 && !argmin_truncated; }
};

// Exhaustive optimum over all control matrices meeting the budget.  The
// search space factorizes: per load and per ON count, every slot subset is
// simulated exactly and comfort violations discarded; the split of a total
// budget across loads is then optimized over all compositions.  Matrices
// tied with the minimum within 1e-12 are all reported.  Throws
// InfeasibleBudgetError when no admissible matrix exists, InputError on
// malformed instances (including more than 16 slots or more than 3 loads).
BruteForceResult brute_force_optimum(const DiscreteInstance& inst,
                                     std::size_t argmin_cap = 4096);

}  // namespace tclplan
