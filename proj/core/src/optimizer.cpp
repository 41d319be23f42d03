#include "spreadnet/optimizer.hpp"

#include <cmath>
#include <string>

#include "spreadnet/errors.hpp"

namespace spreadnet {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795029;

double coverage_at(double q, int k) {
  return -std::expm1(k * std::log1p(-q));
}

// Smallest k with 1 - (1-q_cap)^k >= gamma. The closed-form ceiling is the
// starting guess; the scan around it absorbs floating-point edge cases.
int minimal_feasible_k(double gamma, double q_cap, int slot_cap) {
  const double ratio = std::log1p(-gamma) / std::log1p(-q_cap);
  int k = ratio > 0.0 ? static_cast<int>(std::ceil(ratio)) : 1;
  if (k < 1) k = 1;
  if (k > slot_cap) k = slot_cap;
  while (k > 1 && coverage_at(q_cap, k - 1) >= gamma) --k;
  while (k <= slot_cap && coverage_at(q_cap, k) < gamma) ++k;
  if (k > slot_cap) {
    throw InfeasibleError("coverage target unreachable within slot_cap");
  }
  return k;
}

// Throws unless the cap-power broadcast schedule can reach gamma within
// slot_cap slots; returns the minimal slot count that does.
int require_feasible(const NetworkConfig& cfg, double gamma, double q_cap) {
  if (!(q_cap > 0.0)) {
    throw InfeasibleError(
        "target_ratio is positive but per-slot fresh coverage at the power "
        "cap is zero");
  }
  const double reachable = coverage_at(q_cap, cfg.slot_cap);
  if (reachable < gamma) {
    throw InfeasibleError(
        "coverage target " + std::to_string(gamma) + " exceeds the " +
        std::to_string(reachable) + " reachable with " +
        std::to_string(cfg.slot_cap) + " slots at the power cap");
  }
  return minimal_feasible_k(gamma, q_cap, cfg.slot_cap);
}

// Inverts the per-slot success requirement for a constant k-slot schedule.
// With no uplink interferers or a zero threshold, success does not depend
// on power at all and the cap is returned.
double invert_constant_power(const NetworkConfig& cfg, double p_i,
                             double gamma, int k) {
  if (cfg.beta == 0.0 || cfg.n_bs == 0) return cfg.power_cap;
  const double need = -std::expm1(std::log1p(-gamma) / k);
  const double bracket = p_i / need - 1.0 - kappa(cfg.beta);
  if (!(bracket > 0.0)) {
    throw DegenerateDenominatorError(
        "required per-slot success exceeds the interference-free limit; "
        "power inversion has no solution");
  }
  const double root = kPi * cfg.n_bs * std::sqrt(cfg.beta) /
                      (2.0 * cfg.n_src * bracket);
  double mu = root * root;
  if (mu > cfg.power_cap) mu = cfg.power_cap;  // rounding guard
  return mu;
}

// Root of r_prev + weight * p_i * p_suc(mu) - gamma on (0, cap]. The
// residual is increasing in mu; the loop keeps residual(hi) >= 0.
double bisect_last_power(const NetworkConfig& cfg, double p_i, double r_prev,
                         double weight, double gamma) {
  const auto residual = [&](double mu) {
    return r_prev + weight * p_i * p_suc_broadcast(cfg, mu) - gamma;
  };
  double hi = cfg.power_cap;
  const double r_hi = residual(hi);
  if (r_hi < 0.0) {
    throw InfeasibleError("coverage target unreachable in the final slot");
  }
  if (std::fabs(r_hi) <= 1e-12) return hi;
  double lo = 0.0;  // residual(0+) < 0 because k_star is minimal
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double r = residual(mid);
    if (std::fabs(r) <= 1e-12) return mid;
    if (r < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

// One-expression candidate for the final-slot power, reported next to the
// bisection result so the two can be compared.
double last_power_candidate(const NetworkConfig& cfg, double p_i,
                            double p_cap_suc, double gamma, int k_star) {
  if (cfg.beta == 0.0 || cfg.n_src == 0 || cfg.n_bs == 0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double kap = kappa(cfg.beta);
  const double w_q = std::exp((k_star - 1) * std::log1p(-p_i * p_cap_suc));
  const double w_p = std::exp((k_star - 1) * std::log1p(-p_cap_suc));
  const double num = w_q + gamma - 1.0;
  const double den = (1.0 - gamma) * (1.0 + kap) + (1.0 + kap - p_i) * w_p;
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double root = kPi * cfg.n_bs * std::sqrt(cfg.beta) * num /
                      (2.0 * cfg.n_src * den);
  return root * root;
}

void attach_prediction(OptimizationResult& res, const NetworkConfig& cfg) {
  ScheduleEvaluation ev = evaluate_schedule(cfg, res.schedule.powers);
  res.schedule.per_slot_ratio = std::move(ev.per_slot_ratio);
  res.predicted_redundancy = ev.redundancy;
  res.predicted_final_ratio = ev.final_ratio;
}

}  // namespace

ScheduleEvaluation evaluate_schedule(const NetworkConfig& cfg,
                                     const std::vector<double>& powers) {
  cfg.validate();
  if (powers.empty()) {
    throw ValidationError("schedule must contain at least one slot");
  }
  const double p_i = idle_probability(cfg);
  ScheduleEvaluation ev;
  ev.per_slot_ratio.reserve(powers.size());
  double r = 0.0;
  for (double mu : powers) {
    if (!std::isfinite(mu) || mu <= 0.0) {
      throw ValidationError("schedule powers must be finite and positive");
    }
    if (mu > cfg.power_cap) {
      throw ValidationError("schedule power exceeds power_cap");
    }
    const double q = p_i * p_suc_broadcast(cfg, mu);
    ev.redundancy += cfg.n_mu * q * r;
    r += (1.0 - r) * q;
    ev.per_slot_ratio.push_back(r);
  }
  ev.final_ratio = r;
  return ev;
}

OptimizationResult solve_constant(const NetworkConfig& cfg) {
  cfg.validate();
  const double gamma = cfg.target_ratio;
  OptimizationResult res;
  res.regime = Regime::ConstantPower;
  if (gamma == 0.0) {
    res.k_star = 1;
    res.schedule.powers = {cfg.power_cap};
    attach_prediction(res, cfg);
    return res;
  }
  const double p_i = idle_probability(cfg);
  const double q_cap = p_i * p_suc_broadcast(cfg, cfg.power_cap);
  const int k_star = require_feasible(cfg, gamma, q_cap);
  const double mu_star = invert_constant_power(cfg, p_i, gamma, k_star);
  res.k_star = k_star;
  res.schedule.powers.assign(k_star, mu_star);
  attach_prediction(res, cfg);
  return res;
}

OptimizationResult solve_dynamic(const NetworkConfig& cfg) {
  cfg.validate();
  const double gamma = cfg.target_ratio;
  OptimizationResult res;
  res.regime = Regime::DynamicPower;
  if (gamma == 0.0) {
    res.k_star = 1;
    res.schedule.powers = {cfg.power_cap};
    attach_prediction(res, cfg);
    return res;
  }
  const double p_i = idle_probability(cfg);
  const double p_cap_suc = p_suc_broadcast(cfg, cfg.power_cap);
  const double q_cap = p_i * p_cap_suc;
  const int k_star = require_feasible(cfg, gamma, q_cap);
  const double weight = std::exp((k_star - 1) * std::log1p(-q_cap));
  const double r_prev = 1.0 - weight;
  double mu_last;
  if (cfg.beta == 0.0 || cfg.n_bs == 0) {
    mu_last = cfg.power_cap;  // success does not depend on power here
  } else {
    mu_last = bisect_last_power(cfg, p_i, r_prev, weight, gamma);
  }
  res.k_star = k_star;
  res.schedule.powers.assign(k_star, cfg.power_cap);
  res.schedule.powers.back() = mu_last;
  attach_prediction(res, cfg);
  res.last_power_closed_form =
      last_power_candidate(cfg, p_i, p_cap_suc, gamma, k_star);
  return res;
}

OptimizationResult grid_oracle(const NetworkConfig& cfg, int power_grid_size,
                               int k_min, int k_max, Regime regime) {
  cfg.validate();
  if (power_grid_size < 2) {
    throw ValidationError("power_grid_size must be at least 2");
  }
  if (k_min < 1 || k_max < k_min) {
    throw ValidationError("slot range must satisfy 1 <= k_min <= k_max");
  }
  if (k_max > cfg.slot_cap) k_max = cfg.slot_cap;
  if (k_min > k_max) {
    throw ValidationError("slot range lies entirely above slot_cap");
  }

  const double gamma = cfg.target_ratio;
  const double p_i = idle_probability(cfg);
  const int grid = power_grid_size;
  const auto mu_at = [&](int j) {
    return cfg.power_cap * (static_cast<double>(j + 1) / grid);
  };
  std::vector<double> q_grid(grid);
  for (int j = 0; j < grid; ++j) {
    q_grid[j] = p_i * p_suc_broadcast(cfg, mu_at(j));
  }
  const double q_cap = q_grid[grid - 1];

  bool found = false;
  int best_k = 0;
  int best_j = -1;
  double best_f = std::numeric_limits<double>::infinity();

  if (regime == Regime::ConstantPower) {
    for (int k = k_min; k <= k_max; ++k) {
      if (gamma > 0.0 && coverage_at(q_cap, k) < gamma) continue;
      // The final ratio rises with power, so the cheapest feasible grid
      // point is located by binary search instead of a linear scan.
      int lo = 0, hi = grid - 1;
      while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (coverage_at(q_grid[mid], k) >= gamma) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      const double q = q_grid[lo];
      double r = 0.0, red = 0.0;
      for (int t = 0; t < k; ++t) {
        red += cfg.n_mu * q * r;
        r += (1.0 - r) * q;
      }
      if (!found || red < best_f) {
        found = true;
        best_k = k;
        best_j = lo;
        best_f = red;
      }
    }
  } else {
    // All slots but the last run at the cap; the prefix state is grown
    // incrementally as k advances.
    double r_prefix = 0.0, red_prefix = 0.0;
    int prefix_len = 0;
    for (int k = k_min; k <= k_max; ++k) {
      while (prefix_len < k - 1) {
        red_prefix += cfg.n_mu * q_cap * r_prefix;
        r_prefix += (1.0 - r_prefix) * q_cap;
        ++prefix_len;
      }
      if (gamma > 0.0 && coverage_at(q_cap, k) < gamma) continue;
      const auto ratio_at = [&](int j) {
        return r_prefix + (1.0 - r_prefix) * q_grid[j];
      };
      if (ratio_at(grid - 1) < gamma) continue;
      int lo = 0, hi = grid - 1;
      while (lo < hi) {
        const int mid = (lo + hi) / 2;
        if (ratio_at(mid) >= gamma) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      const double red = red_prefix + cfg.n_mu * q_grid[lo] * r_prefix;
      if (!found || red < best_f) {
        found = true;
        best_k = k;
        best_j = lo;
        best_f = red;
      }
    }
  }

  if (!found) {
    throw InfeasibleError("no grid point meets the coverage target");
  }
  OptimizationResult res;
  res.regime = regime;
  res.k_star = best_k;
  if (regime == Regime::ConstantPower) {
    res.schedule.powers.assign(best_k, mu_at(best_j));
  } else {
    res.schedule.powers.assign(best_k, cfg.power_cap);
    res.schedule.powers.back() = mu_at(best_j);
  }
  attach_prediction(res, cfg);
  return res;
}

}  // namespace spreadnet
