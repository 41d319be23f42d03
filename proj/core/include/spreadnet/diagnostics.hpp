#pragma once

#include <vector>

#include "spreadnet/closed_form.hpp"
#include "spreadnet/network_config.hpp"
#include "spreadnet/simulator.hpp"

namespace spreadnet {

// Per-slot z-scores probing whether the mobile population stays well mixed
// over the run. Two equalities should hold in a homogeneous network:
//   1. the decode count has the same mean in every slot, and
//   2. among decoders, the already-covered fraction matches the covered
//      fraction of the whole population entering the slot.
// The first is tested against the pooled all-slot decode mean; the second
// through the per-trial paired difference m_hat/m - n_{k-1}/n_mu, whose
// mean is zero under mixing regardless of placement-model bias.
struct HomogeneityReport {
  int k_max = 0;
  int trials = 0;
  double analytic_fresh_q = 0.0;     // model per-user fresh-coverage probability
  double analytic_decode_mean = 0.0; // model E[decodes per slot]
  double pooled_decode_mean = 0.0;   // empirical all-slot decode mean
  std::vector<double> mean_m;
  std::vector<double> se_m;
  std::vector<double> z_decode_rate;   // slot mean vs pooled mean
  std::vector<double> mean_ratio;      // E[m_hat/m | m > 0]
  std::vector<double> expected_ratio;  // E[n_{k-1}] / n_mu
  std::vector<double> z_mixing;        // paired difference z; slot 1 is 0
  int decode_rate_violations = 0;      // slots with |z_decode_rate| > 3
  int mixing_violations = 0;           // slots 2..k with |z_mixing| > 3
  double max_abs_z_decode = 0.0;
  double max_abs_z_mixing = 0.0;
};

// Throws InsufficientDataError if some slot saw no decoding trial, since
// the conditional ratio is undefined there.
HomogeneityReport homogeneity_diagnostics(const AggregatedStats& stats,
                                          const NetworkConfig& cfg, double mu,
                                          Mode mode);

}  // namespace spreadnet
