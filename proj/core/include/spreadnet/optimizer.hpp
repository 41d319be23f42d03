#pragma once

#include <limits>
#include <vector>

#include "spreadnet/closed_form.hpp"
#include "spreadnet/network_config.hpp"

namespace spreadnet {

enum class Regime { ConstantPower, DynamicPower };

struct PowerSchedule {
  std::vector<double> powers;          // one transmit power per slot
  std::vector<double> per_slot_ratio;  // predicted covered fraction after each slot
};

struct ScheduleEvaluation {
  double final_ratio = 0.0;
  double redundancy = 0.0;
  std::vector<double> per_slot_ratio;
};

// Minimizer output: fewest slots k_star, then the cheapest powers, that
// push the expected covered fraction to the target while minimizing the
// expected number of redundant receptions.
struct OptimizationResult {
  Regime regime = Regime::ConstantPower;
  int k_star = 0;
  PowerSchedule schedule;
  double predicted_redundancy = 0.0;
  double predicted_final_ratio = 0.0;
  // Alternative closed-form candidate for the dynamic regime's final-slot
  // power, kept for comparison. The bisection result stored in
  // schedule.powers.back() is authoritative; NaN when not applicable.
  double last_power_closed_form = std::numeric_limits<double>::quiet_NaN();
};

// Expected covered fraction and redundant receptions of an arbitrary
// power schedule, one slot per entry, via the per-slot recurrence.
ScheduleEvaluation evaluate_schedule(const NetworkConfig& cfg,
                                     const std::vector<double>& powers);

// Same power in every slot: minimal slot count, then the exact power that
// meets the coverage target with equality.
OptimizationResult solve_constant(const NetworkConfig& cfg);

// Power may vary per slot: the cap everywhere except a reduced final slot.
OptimizationResult solve_dynamic(const NetworkConfig& cfg);

// Exhaustive cross-check on a power grid mu_j = power_cap * j / grid_size:
// scans every slot count in [k_min, k_max] (clamped to slot_cap) and picks
// the feasible (k, power) pair with the smallest redundancy; ties prefer
// fewer slots, then lower power.
OptimizationResult grid_oracle(const NetworkConfig& cfg, int power_grid_size,
                               int k_min, int k_max,
                               Regime regime = Regime::ConstantPower);

}  // namespace spreadnet
