#include "spreadnet/closed_form.hpp"

#include <cmath>

#include "spreadnet/errors.hpp"

namespace spreadnet {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void require_alpha4(const NetworkConfig& cfg, const char* who) {
  if (cfg.alpha != 4.0) {
    throw ValidationError(std::string(who) +
                          ": closed form requires alpha == 4 exactly");
  }
}

void require_positive_mu(double mu, const char* who) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw ValidationError(std::string(who) + ": mu must be positive and finite");
  }
}

}  // namespace

double idle_probability(const NetworkConfig& cfg) {
  cfg.validate();
  if (cfg.n_bs == 0) return 1.0;
  if (cfg.n_mu == 0) return 0.0;
  const double ratio = static_cast<double>(cfg.n_bs) / cfg.n_mu;
  const double load = cfg.n_mu / (3.5 * cfg.n_bs);
  return 1.0 - ratio * (1.0 - std::pow(1.0 + load, -3.5));
}

double kappa(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ValidationError("kappa: beta must be >= 0 and finite");
  }
  if (beta == 0.0) return 0.0;
  const double root = std::sqrt(beta);
  return root * (kPi / 2.0 - std::atan(1.0 / root));
}

double p_suc_unicast(const NetworkConfig& cfg, double mu) {
  cfg.validate();
  require_alpha4(cfg, "p_suc_unicast");
  require_positive_mu(mu, "p_suc_unicast");
  if (cfg.beta == 0.0) return 1.0;
  const double root_beta = std::sqrt(cfg.beta);
  const double denom = cfg.n_mu +
                       (kPi / 2.0) * (root_beta / std::sqrt(mu)) * cfg.n_bs +
                       (kPi / 2.0) * cfg.n_src * root_beta;
  return cfg.n_mu / denom;
}

double p_suc_broadcast(const NetworkConfig& cfg, double mu) {
  cfg.validate();
  require_alpha4(cfg, "p_suc_broadcast");
  require_positive_mu(mu, "p_suc_broadcast");
  if (cfg.beta == 0.0) return 1.0;
  if (cfg.n_src == 0) return 0.0;
  const double root_beta = std::sqrt(cfg.beta);
  const double denom = cfg.n_src +
                       (kPi / 2.0) * (root_beta / std::sqrt(mu)) * cfg.n_bs +
                       cfg.n_src * kappa(cfg.beta);
  return cfg.n_src / denom;
}

double fresh_coverage_probability(const NetworkConfig& cfg, double mu,
                                  Mode mode) {
  const double p_i = idle_probability(cfg);
  if (mode == Mode::Broadcast) return p_i * p_suc_broadcast(cfg, mu);
  if (cfg.n_mu == 0) return 0.0;
  const double p_eff =
      (static_cast<double>(cfg.n_src) / cfg.n_mu) * p_suc_unicast(cfg, mu);
  return p_i * p_eff;
}

CoverageCurve coverage_curve_from_success(const NetworkConfig& cfg, double mu,
                                          Mode mode, double p_suc_eff,
                                          int k_max) {
  cfg.validate();
  if (k_max < 1) throw ValidationError("coverage_curve: k_max must be >= 1");
  if (!(p_suc_eff >= 0.0 && p_suc_eff <= 1.0)) {
    throw ValidationError("coverage_curve: p_suc must lie in [0, 1]");
  }
  CoverageCurve curve;
  curve.mode = mode;
  curve.mu = mu;
  curve.p_suc = p_suc_eff;
  curve.p_idle = idle_probability(cfg);
  curve.fresh_q = curve.p_idle * p_suc_eff;
  curve.per_slot_expected_covered.resize(k_max);
  const double log_miss = std::log1p(-curve.fresh_q);
  for (int k = 1; k <= k_max; ++k) {
    // n_mu * (1 - (1-q)^k), with the power kept in log space for accuracy.
    curve.per_slot_expected_covered[k - 1] =
        cfg.n_mu * (-std::expm1(static_cast<double>(k) * log_miss));
  }
  return curve;
}

CoverageCurve coverage_curve(const NetworkConfig& cfg, double mu, Mode mode,
                             int k_max) {
  double p_link, p_eff;
  if (mode == Mode::Broadcast) {
    p_link = p_suc_broadcast(cfg, mu);
    p_eff = p_link;
  } else if (cfg.n_mu == 0) {
    p_link = 0.0;
    p_eff = 0.0;
  } else {
    p_link = p_suc_unicast(cfg, mu);
    p_eff = (static_cast<double>(cfg.n_src) / cfg.n_mu) * p_link;
  }
  CoverageCurve curve = coverage_curve_from_success(cfg, mu, mode, p_eff, k_max);
  // Report the per-link probability, not the per-user effective one.
  curve.p_suc = p_link;
  return curve;
}

double redundancy_from_q(double n_mu, double q, int k) {
  if (k < 1) throw ValidationError("redundancy: k must be >= 1");
  if (!(q >= 0.0 && q <= 1.0)) {
    throw ValidationError("redundancy: q must lie in [0, 1]");
  }
  if (k == 1) return 0.0;
  const double log_miss = std::log1p(-q);
  return n_mu * (static_cast<double>(k) * q +
                 std::expm1(static_cast<double>(k) * log_miss));
}

double redundancy(const NetworkConfig& cfg, double mu, int k) {
  return redundancy_from_q(cfg.n_mu,
                           fresh_coverage_probability(cfg, mu, Mode::Broadcast),
                           k);
}

}  // namespace spreadnet
