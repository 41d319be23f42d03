#pragma once

#include <cstdint>
#include <string>

#include "spreadnet/closed_form.hpp"
#include "spreadnet/network_config.hpp"
#include "spreadnet/simulator.hpp"

namespace spreadnet {

// Everything one CLI run needs, expressible as a flat "key = value" file
// with '#' comments. serialize_config(parse_config(s)) is a fixed point:
// numbers are written in shortest round-trip form and keys in a canonical
// order, so identical settings always produce identical bytes.
struct ExperimentConfig {
  NetworkConfig net;
  double mu = 0.064;  // transmit power used by predict/verify/simulate
  Mode mode = Mode::Broadcast;
  MobilityModel mobility = MobilityModel::RandomDirection;
  DistanceModel distance = DistanceModel::Torus;
  UplinkModel uplink = UplinkModel::AnalysisMatched;
  double speed = 5.0;
  double slot_period = 600.0;
  int k_max = 45;
  int trials = 10000;
  std::uint64_t seed = 1;
  std::string out;  // output CSV path; empty means the subcommand default

  SimOptions sim_options() const;
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

// The built-in reference scenario selected by "--preset fig2".
ExperimentConfig reference_preset();

// Parses config text; unknown keys, malformed values, and out-of-domain
// settings raise ValidationError with the offending line number.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config(const std::string& path);

std::string serialize_config(const ExperimentConfig& cfg);

// Linear-scale SIR threshold from a decibel value.
double beta_from_db(double db);

}  // namespace spreadnet
