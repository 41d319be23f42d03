#pragma once

#include <vector>

#include "spreadnet/network_config.hpp"

namespace spreadnet {

enum class Mode { Unicast, Broadcast };

// Expected-coverage trajectory under one transmission mode at a fixed
// transmit power. Entry k-1 of per_slot_expected_covered is E[N_k], the
// expected number of covered users by the end of slot k.
struct CoverageCurve {
  Mode mode = Mode::Broadcast;
  double mu = 0.0;
  double p_suc = 0.0;   // per-link success probability for the mode
  double p_idle = 0.0;  // probability a user holds no uplink resource block
  double fresh_q = 0.0; // per-slot fresh-coverage probability of one user
  std::vector<double> per_slot_expected_covered;
};

// Probability that a user is not assigned an uplink resource block in a
// slot. Extends continuously to n_bs == 0 (always idle) and n_mu == 0
// (every user scheduled).
double idle_probability(const NetworkConfig& cfg);

// sqrt(beta) * (pi/2 - atan(1/sqrt(beta))); kappa(0) == 0.
double kappa(double beta);

// Success probability of a unicast link from a source to its nearest user,
// under uplink and other-source interference. Requires alpha == 4.
double p_suc_unicast(const NetworkConfig& cfg, double mu);

// Success probability of a broadcast reception from the nearest source.
// Requires alpha == 4.
double p_suc_broadcast(const NetworkConfig& cfg, double mu);

// Per-slot probability that a given user is freshly covered:
// p_idle * p_suc_broadcast for broadcast, (n_src/n_mu) * p_idle *
// p_suc_unicast for unicast.
double fresh_coverage_probability(const NetworkConfig& cfg, double mu, Mode mode);

CoverageCurve coverage_curve(const NetworkConfig& cfg, double mu, Mode mode,
                             int k_max);

// Building block for coverage_curve: the same trajectory with the per-link
// success probability supplied directly instead of computed from cfg.
CoverageCurve coverage_curve_from_success(const NetworkConfig& cfg, double mu,
                                          Mode mode, double p_suc_eff,
                                          int k_max);

// Expected number of redundant receptions after k slots at per-user
// fresh-coverage probability q: n_mu * (k*q - 1 + (1-q)^k).
double redundancy_from_q(double n_mu, double q, int k);

// Redundant receptions for broadcast operation at power mu over k slots.
double redundancy(const NetworkConfig& cfg, double mu, int k);

}  // namespace spreadnet
