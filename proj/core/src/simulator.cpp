#include "spreadnet/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "spreadnet/errors.hpp"
#include "spreadnet/stats.hpp"

namespace spreadnet {

namespace {

constexpr double kTwoPi = 6.2831853071795864769252867665590058;

double inv_range_pow(double d2, double alpha) {
  if (alpha == 4.0) {
    return 1.0 / (d2 * d2);
  }
  return std::pow(d2, -0.5 * alpha);
}

void check_slot_power(double mu, const NetworkConfig& cfg) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw ValidationError("transmit power must be finite and positive");
  }
  if (mu > cfg.power_cap) {
    throw ValidationError("transmit power exceeds power_cap");
  }
}

void check_power_list(const std::vector<double>& powers, int k_max) {
  if (powers.empty()) {
    throw ValidationError("power list must not be empty");
  }
  if (powers.size() != 1 && powers.size() != static_cast<std::size_t>(k_max)) {
    throw ValidationError(
        "power list must hold one shared value or one value per slot");
  }
}

}  // namespace

void SimOptions::validate() const {
  if (!std::isfinite(speed) || speed < 0.0) {
    throw ValidationError("speed must be finite and non-negative");
  }
  if (!std::isfinite(slot_period) || slot_period <= 0.0) {
    throw ValidationError("slot_period must be finite and positive");
  }
}

double AggregatedStats::mean_m(int k) const { return sum_m[k - 1] / trials; }

double AggregatedStats::se_m(int k) const {
  return se_from_sums(sum_m[k - 1], sum_m2[k - 1], trials);
}

double AggregatedStats::mean_n(int k) const { return sum_n[k - 1] / trials; }

double AggregatedStats::mean_coverage_ratio(int k) const {
  return n_mu > 0 ? mean_n(k) / n_mu : 0.0;
}

double AggregatedStats::se_coverage_ratio(int k) const {
  if (n_mu <= 0) return 0.0;
  return se_from_sums(sum_n[k - 1], sum_n2[k - 1], trials) / n_mu;
}

double AggregatedStats::mean_redundant() const {
  return sum_redundant / trials;
}

double AggregatedStats::se_redundant() const {
  return se_from_sums(sum_redundant, sum_redundant2, trials);
}

double AggregatedStats::pooled_mean_m() const {
  double total = 0.0;
  for (double s : sum_m) total += s;
  return total / (static_cast<double>(trials) * k_max);
}

SimWorld place_nodes(const NetworkConfig& cfg, std::uint64_t seed,
                     const SimOptions& options, std::uint32_t trial) {
  cfg.validate();
  options.validate();
  SimWorld w;
  w.side = cfg.side();
  w.speed = options.speed;
  w.slot_period = options.slot_period;
  w.rng_seed = seed;
  w.options = options;
  w.rng = RngStream(seed, trial);
  w.mu_positions.resize(cfg.n_mu);
  w.src_positions.resize(cfg.n_src);
  w.bs_positions.resize(cfg.n_bs);
  w.mu_heading.assign(cfg.n_mu, 0.0);
  w.src_heading.assign(cfg.n_src, 0.0);
  w.covered.assign(cfg.n_mu, 0);
  // Draw order is part of the reproducibility contract: users, then
  // sources, then base stations, x before y.
  for (auto& p : w.mu_positions) {
    p.x = w.rng.uniform(0.0, w.side);
    p.y = w.rng.uniform(0.0, w.side);
  }
  for (auto& p : w.src_positions) {
    p.x = w.rng.uniform(0.0, w.side);
    p.y = w.rng.uniform(0.0, w.side);
  }
  for (auto& p : w.bs_positions) {
    p.x = w.rng.uniform(0.0, w.side);
    p.y = w.rng.uniform(0.0, w.side);
  }
  return w;
}

void step_mobility(SimWorld& w, MobilityModel model) {
  const double side = w.side;
  if (model == MobilityModel::IID) {
    for (auto& p : w.mu_positions) {
      p.x = w.rng.uniform(0.0, side);
      p.y = w.rng.uniform(0.0, side);
    }
    for (auto& p : w.src_positions) {
      p.x = w.rng.uniform(0.0, side);
      p.y = w.rng.uniform(0.0, side);
    }
    return;
  }
  // A node pair drawing similar headings keeps its relative geometry for
  // the whole straight segment, so the walk is split into four epochs with
  // independent headings; reflection keeps headings physical at the walls.
  constexpr int kEpochs = 4;
  const double seg_len = w.speed * w.slot_period / kEpochs;
  auto move = [&](Vec2& p, double& heading) {
    for (int e = 0; e < kEpochs; ++e) {
      heading = w.rng.uniform(0.0, kTwoPi);
      p.x = reflect_fold(p.x + seg_len * std::cos(heading), side);
      p.y = reflect_fold(p.y + seg_len * std::sin(heading), side);
    }
  };
  for (std::size_t i = 0; i < w.mu_positions.size(); ++i) {
    move(w.mu_positions[i], w.mu_heading[i]);
  }
  for (std::size_t i = 0; i < w.src_positions.size(); ++i) {
    move(w.src_positions[i], w.src_heading[i]);
  }
}

SlotRecord run_slot(SimWorld& w, const NetworkConfig& cfg, double mu,
                    Mode mode) {
  check_slot_power(mu, cfg);
  const int n_mu = cfg.n_mu;
  const int n_src = cfg.n_src;
  const int n_bs = cfg.n_bs;
  const double side = w.side;
  const double alpha = cfg.alpha;
  const double beta = cfg.beta;
  const DistanceModel dist = w.options.distance;

  // Uplink stage. The draw order is fixed — interferer layout, then busy
  // flags, then per-receiver fading, each in ascending index order — so a
  // (seed, trial) pair replays bit-identically.
  w.busy.assign(n_mu, 0);
  w.interferer_positions.clear();
  if (w.options.uplink == UplinkModel::AnalysisMatched) {
    for (int j = 0; j < n_bs; ++j) {
      Vec2 p{w.rng.uniform(0.0, side), w.rng.uniform(0.0, side)};
      w.interferer_positions.push_back(p);
    }
    const double p_busy = 1.0 - idle_probability(cfg);
    for (int i = 0; i < n_mu; ++i) {
      w.busy[i] = w.rng.uniform01() < p_busy ? 1 : 0;
    }
  } else if (n_bs > 0 && n_mu > 0) {
    // Structural model: every base station grants its uplink resource
    // block to one user of its cell, chosen uniformly; those uploaders
    // interfere from their actual positions.
    w.mu_cell.assign(n_mu, -1);
    w.bs_member_count.assign(n_bs, 0);
    for (int i = 0; i < n_mu; ++i) {
      int best = 0;
      double best_d2 =
          squared_distance(w.mu_positions[i], w.bs_positions[0], dist, side);
      for (int b = 1; b < n_bs; ++b) {
        const double d2 =
            squared_distance(w.mu_positions[i], w.bs_positions[b], dist, side);
        if (d2 < best_d2) {
          best = b;
          best_d2 = d2;
        }
      }
      w.mu_cell[i] = best;
      ++w.bs_member_count[best];
    }
    w.bs_pick.assign(n_bs, -1);
    for (int b = 0; b < n_bs; ++b) {
      const int count = w.bs_member_count[b];
      if (count == 0) continue;
      int pick = static_cast<int>(w.rng.uniform01() * count);
      if (pick >= count) pick = count - 1;
      w.bs_pick[b] = pick;
    }
    // Resolve each cell's pick ordinal back to a user index; reuse the
    // member counter as the running ordinal.
    std::fill(w.bs_member_count.begin(), w.bs_member_count.end(), 0);
    for (int i = 0; i < n_mu; ++i) {
      const int b = w.mu_cell[i];
      if (w.bs_member_count[b]++ == w.bs_pick[b]) {
        w.busy[i] = 1;
        w.interferer_positions.push_back(w.mu_positions[i]);
      }
    }
  }
  const int n_int = static_cast<int>(w.interferer_positions.size());

  SlotRecord rec;
  auto record_success = [&](int user) {
    ++rec.m;
    if (w.covered[user]) {
      ++rec.m_hat;
    } else {
      w.covered[user] = 1;
      ++w.covered_count;
    }
  };

  if (mode == Mode::Broadcast) {
    if (n_src > 0) {
      w.src_d2.resize(n_src);
      for (int i = 0; i < n_mu; ++i) {
        if (w.busy[i]) continue;
        const Vec2 at = w.mu_positions[i];
        int nearest = 0;
        for (int s = 0; s < n_src; ++s) {
          w.src_d2[s] = squared_distance(at, w.src_positions[s], dist, side);
          if (w.src_d2[s] < w.src_d2[nearest]) nearest = s;
        }
        double desired = 0.0;
        double interference = 0.0;
        for (int s = 0; s < n_src; ++s) {
          const double p =
              mu * w.rng.exponential() * inv_range_pow(w.src_d2[s], alpha);
          if (s == nearest) {
            desired = p;
          } else {
            interference += p;
          }
        }
        for (int j = 0; j < n_int; ++j) {
          const double d2 =
              squared_distance(at, w.interferer_positions[j], dist, side);
          interference += w.rng.exponential() * inv_range_pow(d2, alpha);
        }
        if (desired >= beta * interference) record_success(i);
      }
    }
  } else if (n_src > 0 && n_mu > 0) {
    // Every source addresses its nearest user; a user targeted by several
    // sources is evaluated once against all of them.
    w.unicast_targets.assign(n_src, -1);
    for (int s = 0; s < n_src; ++s) {
      const Vec2 from = w.src_positions[s];
      int best = 0;
      double best_d2 = squared_distance(from, w.mu_positions[0], dist, side);
      for (int i = 1; i < n_mu; ++i) {
        const double d2 = squared_distance(from, w.mu_positions[i], dist, side);
        if (d2 < best_d2) {
          best = i;
          best_d2 = d2;
        }
      }
      w.unicast_targets[s] = best;
    }
    w.unicast_receivers = w.unicast_targets;
    std::sort(w.unicast_receivers.begin(), w.unicast_receivers.end());
    w.unicast_receivers.erase(
        std::unique(w.unicast_receivers.begin(), w.unicast_receivers.end()),
        w.unicast_receivers.end());
    w.src_power.resize(n_src);
    for (int t : w.unicast_receivers) {
      if (w.busy[t]) continue;
      const Vec2 at = w.mu_positions[t];
      double total_src = 0.0;
      for (int s = 0; s < n_src; ++s) {
        const double d2 = squared_distance(at, w.src_positions[s], dist, side);
        const double p = mu * w.rng.exponential() * inv_range_pow(d2, alpha);
        w.src_power[s] = p;
        total_src += p;
      }
      double uplink = 0.0;
      for (int j = 0; j < n_int; ++j) {
        const double d2 =
            squared_distance(at, w.interferer_positions[j], dist, side);
        uplink += w.rng.exponential() * inv_range_pow(d2, alpha);
      }
      bool decoded = false;
      for (int s = 0; s < n_src; ++s) {
        if (w.unicast_targets[s] != t) continue;
        const double signal = w.src_power[s];
        const double others = std::max(0.0, total_src - signal);
        if (signal >= beta * (uplink + others)) decoded = true;
      }
      if (decoded) record_success(t);
    }
  }

  rec.n = w.covered_count;
  return rec;
}

TrialStats run_trial(const NetworkConfig& cfg, const std::vector<double>& powers,
                     Mode mode, const SimOptions& options, int k_max,
                     std::uint64_t seed, std::uint32_t trial) {
  if (k_max < 1) throw ValidationError("k_max must be at least 1");
  check_power_list(powers, k_max);
  SimWorld w = place_nodes(cfg, seed, options, trial);
  TrialStats stats;
  stats.m.reserve(k_max);
  stats.m_hat.reserve(k_max);
  stats.n.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) {
    if (k > 1) step_mobility(w, options.mobility);
    const double mu_k = powers.size() == 1 ? powers[0] : powers[k - 1];
    const SlotRecord rec = run_slot(w, cfg, mu_k, mode);
    stats.m.push_back(rec.m);
    stats.m_hat.push_back(rec.m_hat);
    stats.n.push_back(rec.n);
    stats.redundant_receptions += rec.m_hat;
  }
  return stats;
}

AggregatedStats run_experiment(const NetworkConfig& cfg,
                               const std::vector<double>& powers, Mode mode,
                               const SimOptions& options, int k_max, int trials,
                               std::uint64_t seed) {
  cfg.validate();
  options.validate();
  if (k_max < 1) throw ValidationError("k_max must be at least 1");
  if (trials < 1) throw ValidationError("trials must be at least 1");
  check_power_list(powers, k_max);

  AggregatedStats agg;
  agg.trials = trials;
  agg.k_max = k_max;
  agg.n_mu = cfg.n_mu;
  agg.sum_m.assign(k_max, 0.0);
  agg.sum_m2.assign(k_max, 0.0);
  agg.sum_mhat.assign(k_max, 0.0);
  agg.sum_n.assign(k_max, 0.0);
  agg.sum_n2.assign(k_max, 0.0);
  agg.sum_ratio.assign(k_max, 0.0);
  agg.sum_ratio2.assign(k_max, 0.0);
  agg.sum_gap.assign(k_max, 0.0);
  agg.sum_gap2.assign(k_max, 0.0);
  agg.ratio_trials.assign(k_max, 0);

  for (std::uint32_t t = 0; t < static_cast<std::uint32_t>(trials); ++t) {
    const TrialStats ts = run_trial(cfg, powers, mode, options, k_max, seed, t);
    std::uint32_t n_prev = 0;
    for (int k = 0; k < k_max; ++k) {
      const double m = ts.m[k];
      const double mh = ts.m_hat[k];
      const double n = ts.n[k];
      agg.sum_m[k] += m;
      agg.sum_m2[k] += m * m;
      agg.sum_mhat[k] += mh;
      agg.sum_n[k] += n;
      agg.sum_n2[k] += n * n;
      if (ts.m[k] > 0) {
        const double ratio = mh / m;
        const double expected =
            cfg.n_mu > 0 ? n_prev / static_cast<double>(cfg.n_mu) : 0.0;
        const double gap = ratio - expected;
        agg.sum_ratio[k] += ratio;
        agg.sum_ratio2[k] += ratio * ratio;
        agg.sum_gap[k] += gap;
        agg.sum_gap2[k] += gap * gap;
        ++agg.ratio_trials[k];
      }
      n_prev = ts.n[k];
    }
    const double red = static_cast<double>(ts.redundant_receptions);
    agg.sum_redundant += red;
    agg.sum_redundant2 += red * red;
  }
  return agg;
}

}  // namespace spreadnet
