#pragma once

#include <cstdint>
#include <vector>

#include "spreadnet/closed_form.hpp"
#include "spreadnet/geometry.hpp"
#include "spreadnet/network_config.hpp"
#include "spreadnet/rng.hpp"

namespace spreadnet {

enum class MobilityModel { IID, RandomDirection };
enum class UplinkModel { AnalysisMatched, Structural };

struct SimOptions {
  MobilityModel mobility = MobilityModel::RandomDirection;
  DistanceModel distance = DistanceModel::Torus;
  UplinkModel uplink = UplinkModel::AnalysisMatched;
  double speed = 5.0;         // m/s
  double slot_period = 600.0; // seconds per transmission slot

  void validate() const;
};

// Mutable state of one trial: node positions on the square, covered flags,
// and the trial's private random stream. Positions stay inside [0, side]^2;
// covered flags never reset within a trial.
struct SimWorld {
  std::vector<Vec2> mu_positions;
  std::vector<Vec2> src_positions;
  std::vector<Vec2> bs_positions;
  std::vector<double> mu_heading;   // last heading drawn per user
  std::vector<double> src_heading;  // last heading drawn per source
  std::vector<std::uint8_t> covered;
  std::uint32_t covered_count = 0;
  double side = 0.0;
  double speed = 5.0;
  double slot_period = 600.0;
  std::uint64_t rng_seed = 0;
  SimOptions options;
  RngStream rng{0};

  // Per-slot scratch buffers, reused so the slot loop stays allocation-free.
  std::vector<Vec2> interferer_positions;
  std::vector<std::uint8_t> busy;
  std::vector<double> src_d2;
  std::vector<double> src_power;
  std::vector<int> mu_cell;           // nearest base station per user
  std::vector<int> bs_member_count;   // users attached per base station
  std::vector<int> bs_pick;           // chosen uploader ordinal per base station
  std::vector<int> unicast_targets;   // nearest user per source
  std::vector<int> unicast_receivers; // distinct targets, ascending
};

struct SlotRecord {
  std::uint32_t m = 0;      // idle users decoding in this slot
  std::uint32_t m_hat = 0;  // of those, covered before the slot began
  std::uint32_t n = 0;      // cumulated covered users after the slot
};

// Per-slot tallies of a single trial.
struct TrialStats {
  std::vector<std::uint32_t> m;
  std::vector<std::uint32_t> m_hat;
  std::vector<std::uint32_t> n;
  std::uint64_t redundant_receptions = 0;  // sum of m_hat
};

// Sums over trials, accumulated in a fixed trial order so results are
// bit-identical for a given (config, seed) regardless of timing.
struct AggregatedStats {
  int trials = 0;
  int k_max = 0;
  int n_mu = 0;
  std::vector<double> sum_m, sum_m2;
  std::vector<double> sum_mhat;
  std::vector<double> sum_n, sum_n2;
  std::vector<double> sum_ratio, sum_ratio2;  // m_hat/m over trials with m > 0
  std::vector<double> sum_gap, sum_gap2;      // m_hat/m - n_prev/n_mu, same trials
  std::vector<int> ratio_trials;              // how many trials had m_k > 0
  double sum_redundant = 0.0, sum_redundant2 = 0.0;

  // Accessors take 1-based slot indices.
  double mean_m(int k) const;
  double se_m(int k) const;
  double mean_n(int k) const;
  double mean_coverage_ratio(int k) const;  // mean n_k / n_mu
  double se_coverage_ratio(int k) const;
  double mean_redundant() const;
  double se_redundant() const;
  double pooled_mean_m() const;  // decode mean pooled over all slots
};

// Uniform placement of every node class; deterministic in (seed, trial).
SimWorld place_nodes(const NetworkConfig& cfg, std::uint64_t seed,
                     const SimOptions& options = {}, std::uint32_t trial = 0);

// Advance one slot of motion. IID redraws every user and source position;
// RandomDirection moves each node speed * slot_period meters along four
// straight epochs with independently drawn headings, reflecting off the
// walls. Base stations do not move.
void step_mobility(SimWorld& world, MobilityModel model);

// Execute one transmission slot: draw uplink activity and fading, decide
// decoding per eligible receiver, and update covered flags.
SlotRecord run_slot(SimWorld& world, const NetworkConfig& cfg, double mu,
                    Mode mode);

// One full trial of k_max slots. powers holds either a single constant
// power or one power per slot.
TrialStats run_trial(const NetworkConfig& cfg, const std::vector<double>& powers,
                     Mode mode, const SimOptions& options, int k_max,
                     std::uint64_t seed, std::uint32_t trial);

// Independent trials reduced in fixed order.
AggregatedStats run_experiment(const NetworkConfig& cfg,
                               const std::vector<double>& powers, Mode mode,
                               const SimOptions& options, int k_max, int trials,
                               std::uint64_t seed);

}  // namespace spreadnet
