#pragma once

#include "spreadnet/closed_form.hpp"
#include "spreadnet/network_config.hpp"
#include "spreadnet/quadrature.hpp"

namespace spreadnet {

// Numerical counterparts of the closed-form success probabilities,
// evaluated from the interference Laplace transforms by adaptive
// quadrature. Valid for any path-loss exponent alpha > 2, which makes them
// an independent oracle for the alpha == 4 closed forms.

// E[exp(-z * I)] for the interference field
// I = sum_uplink g ||y||^-alpha + mu * sum_{sources beyond r} h ||y||^-alpha
// seen by a unicast receiver whose serving source stands at
// nearest_src_dist; sources closer than that distance are excluded from
// the source-field factor.
double laplace_interference_unicast(const NetworkConfig& cfg, double mu,
                                    double z, double nearest_src_dist,
                                    const QuadratureSpec& spec = {});

// Same transform with the full source field (no exclusion ball).
double laplace_interference_broadcast(const NetworkConfig& cfg, double mu,
                                      double z,
                                      const QuadratureSpec& spec = {});

// Success probability by outer integration over the serving-link distance
// distribution. Agrees with p_suc_unicast / p_suc_broadcast at alpha == 4.
double p_suc_numeric(const NetworkConfig& cfg, double mu, Mode mode,
                     const QuadratureSpec& spec = {});

namespace oracle_detail {

// integral_{r}^{inf} w * y / (y^alpha + w) dy, the exponent kernel shared
// by both Laplace factors.
double interference_field_integral(double w, double r, double alpha,
                                   const QuadratureSpec& spec);

}  // namespace oracle_detail

}  // namespace spreadnet
