#include "tclplan/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#include "tclplan/dynamics.hpp"
#include "tclplan/errors.hpp"

namespace tclplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double tie_slack(double reference) {
  return 1e-12 * std::max(1.0, std::abs(reference));
}

// Best admissible subsets of one load, keyed by ON count.
struct CountScan {
  std::vector<double> min_cost;                       // [count]
  std::vector<std::vector<std::uint32_t>> argmin;     // [count] -> masks
  unsigned long long evaluated = 0;
};

// Evaluates the slot subsets of one load.  Within a slot both the ambient
// and the input are constant, so the temperature moves monotonically toward
// its steady state; checking the slot endpoints therefore bounds the whole
// slot, making the comfort test exact.  `want` restricts the scan to one ON
// count; pass -1 to collect every count.
CountScan scan_load(const DiscreteInstance& inst, const TclParams& p,
                    int want) {
  const int k = static_cast<int>(inst.price.size());
  const double lo = p.lower_bound();
  const double hi = p.upper_bound();
  const double tol = 1e-9;

  CountScan scan;
  scan.min_cost.assign(static_cast<std::size_t>(k) + 1, kInf);
  scan.argmin.assign(static_cast<std::size_t>(k) + 1, {});

  if (inst.enforce_comfort && (p.theta0 < lo - tol || p.theta0 > hi + tol)) {
    return scan;  // no subset admissible from an out-of-band start
  }

  const std::uint32_t limit = std::uint32_t{1} << k;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    const int count = std::popcount(mask);
    if (want >= 0 && count != want) continue;
    ++scan.evaluated;
    double theta = p.theta0;
    double price_sum = 0.0;
    bool ok = true;
    for (int s = 0; s < k; ++s) {
      const double u = (mask >> s) & 1u ? 1.0 : 0.0;
      theta = step_exact(p, theta, inst.ambient[static_cast<std::size_t>(s)],
                         u, inst.slot_seconds);
      if (inst.enforce_comfort && (theta < lo - tol || theta > hi + tol)) {
        ok = false;
        break;
      }
      price_sum += u * inst.price[static_cast<std::size_t>(s)];
    }
    if (!ok) continue;
    const double cost = p.electrical_power() * inst.slot_seconds * price_sum /
                        kKwSecondsPerMwh;
    double& best = scan.min_cost[static_cast<std::size_t>(count)];
    auto& ties = scan.argmin[static_cast<std::size_t>(count)];
    if (best == kInf || cost < best - tie_slack(best)) {
      best = cost;
      ties.assign(1, mask);
    } else if (cost <= best + tie_slack(best)) {
      ties.push_back(mask);
    }
  }
  return scan;
}

std::vector<int> mask_to_slots(std::uint32_t mask, std::size_t k) {
  std::vector<int> slots(k, 0);
  for (std::size_t s = 0; s < k; ++s) {
    slots[s] = static_cast<int>((mask >> s) & 1u);
  }
  return slots;
}

// Appends the cartesian product of per-load argmin masks for one ON-count
// composition, stopping at the cap.
void materialize(const std::vector<CountScan>& scans,
                 const std::vector<int>& counts, std::size_t k,
                 std::size_t cap, BruteForceResult& out) {
  const std::size_t n = scans.size();
  std::vector<std::size_t> index(n, 0);
  while (true) {
    if (out.argmin.size() >= cap) {
      out.argmin_truncated = true;
      return;
    }
    ControlMatrix matrix;
    matrix.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& ties = scans[i].argmin[static_cast<std::size_t>(counts[i])];
      matrix.push_back(mask_to_slots(ties[index[i]], k));
    }
    out.argmin.push_back(std::move(matrix));

    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      const auto& ties =
          scans[pos].argmin[static_cast<std::size_t>(counts[pos])];
      if (++index[pos] < ties.size()) break;
      index[pos] = 0;
      if (pos == 0) return;
    }
  }
}

// Enumerates every split of `total` ON slots across loads (n <= 3, so the
// composition space is tiny) and calls `visit(counts, total_cost)` for each
// split admissible for every load.
template <typename Visit>
void for_each_composition(const std::vector<CountScan>& scans, int total,
                          int k, Visit visit) {
  const std::size_t n = scans.size();
  std::vector<int> counts(n, 0);
  const auto recurse = [&](auto&& self, std::size_t i, int remaining,
                           double cost) -> void {
    if (i + 1 == n) {
      if (remaining > k) return;
      const double c =
          scans[i].min_cost[static_cast<std::size_t>(remaining)];
      if (c == kInf) return;
      counts[i] = remaining;
      visit(counts, cost + c);
      return;
    }
    const int top = std::min(k, remaining);
    for (int m = 0; m <= top; ++m) {
      const double c = scans[i].min_cost[static_cast<std::size_t>(m)];
      if (c == kInf) continue;
      counts[i] = m;
      self(self, i + 1, remaining - m, cost + c);
    }
  };
  recurse(recurse, 0, total, 0.0);
}

}  // namespace

BruteForceResult brute_force_optimum(const DiscreteInstance& inst,
                                     std::size_t argmin_cap) {
  const std::size_t k = inst.price.size();
  if (k == 0 || k > 16) {
    throw InputError("slot count must be between 1 and 16, got " +
                     std::to_string(k));
  }
  if (inst.ambient.size() != k) {
    throw InputError("ambient series must have one value per slot");
  }
  if (inst.slot_seconds <= 0.0) {
    throw InputError("slot length must be positive");
  }
  if (inst.loads.empty() || inst.loads.size() > 3) {
    throw InputError("instance must have between 1 and 3 loads");
  }
  const bool total_mode = inst.total_on_slots >= 0;
  if (!total_mode) {
    if (inst.on_slots_per_load.size() != inst.loads.size()) {
      throw InputError("need one required ON-slot count per load");
    }
    for (int m : inst.on_slots_per_load) {
      if (m < 0 || static_cast<std::size_t>(m) > k) {
        throw InputError(
            "required ON-slot count must lie in [0, slot count]");
      }
    }
  } else if (static_cast<std::size_t>(inst.total_on_slots) >
             k * inst.loads.size()) {
    throw InfeasibleBudgetError("total ON-slot budget exceeds slot capacity");
  }

  BruteForceResult result;
  std::vector<CountScan> scans;
  scans.reserve(inst.loads.size());
  for (std::size_t i = 0; i < inst.loads.size(); ++i) {
    const int want =
        total_mode ? -1 : inst.on_slots_per_load[i];
    scans.push_back(scan_load(inst, inst.loads[i], want));
    result.masks_evaluated += scans.back().evaluated;
  }

  double best = kInf;
  std::vector<std::vector<int>> best_compositions;
  const auto consider = [&](const std::vector<int>& counts, double cost) {
    if (best == kInf || cost < best - tie_slack(best)) {
      best = cost;
      best_compositions.assign(1, counts);
    } else if (cost <= best + tie_slack(best)) {
      best_compositions.push_back(counts);
    }
  };

  if (total_mode) {
    for_each_composition(scans, inst.total_on_slots, static_cast<int>(k),
                         consider);
  } else {
    double cost = 0.0;
    bool feasible = true;
    for (std::size_t i = 0; i < scans.size(); ++i) {
      const double c =
          scans[i]
              .min_cost[static_cast<std::size_t>(inst.on_slots_per_load[i])];
      if (c == kInf) {
        feasible = false;
        break;
      }
      cost += c;
    }
    if (feasible) consider(inst.on_slots_per_load, cost);
  }

  if (best == kInf) {
    throw InfeasibleBudgetError(
        "no control matrix meeting the ON-slot budget keeps every load "
        "inside its comfort band");
  }
  result.min_cost = best;
  for (const auto& counts : best_compositions) {
    materialize(scans, counts, k, argmin_cap, result);
    if (result.argmin_truncated) break;
  }
  return result;
}

}  // namespace tclplan
