#pragma once

#include <cmath>

namespace spreadnet {

// Static description of one network scenario: node counts over a square
// region, the SIR threshold, the path-loss exponent, and the optimizer's
// constraint knobs (power cap, slot cap, coverage target).
struct NetworkConfig {
  int n_bs = 8;               // base stations (uplink interferer density)
  int n_mu = 400;             // mobile users (potential receivers)
  int n_src = 4;              // source nodes (transmitters)
  double area = 4.0e6;        // region size, m^2
  double beta = 1.0;          // target SIR, linear scale
  double alpha = 4.0;         // path-loss exponent; closed forms need 4
  double power_cap = 0.064;   // max source transmit power (MU power = 1)
  int slot_cap = 45;          // max number of transmission slots
  double target_ratio = 0.9;  // required covered fraction, in [0, 1)

  double lambda_bs() const { return static_cast<double>(n_bs) / area; }
  double lambda_mu() const { return static_cast<double>(n_mu) / area; }
  double lambda_src() const { return static_cast<double>(n_src) / area; }
  double side() const { return std::sqrt(area); }

  // Throws ValidationError on out-of-domain values. Zero node counts are
  // accepted; operations that need a nonzero count enforce it themselves.
  void validate() const;

  bool operator==(const NetworkConfig&) const = default;
};

}  // namespace spreadnet
