#include "spreadnet/diagnostics.hpp"

#include <cmath>
#include <string>

#include "spreadnet/errors.hpp"
#include "spreadnet/stats.hpp"

namespace spreadnet {

HomogeneityReport homogeneity_diagnostics(const AggregatedStats& stats,
                                          const NetworkConfig& cfg, double mu,
                                          Mode mode) {
  cfg.validate();
  if (stats.k_max < 1 || stats.trials < 1) {
    throw ValidationError("homogeneity_diagnostics: empty statistics");
  }

  HomogeneityReport rep;
  rep.k_max = stats.k_max;
  rep.trials = stats.trials;
  rep.analytic_fresh_q = fresh_coverage_probability(cfg, mu, mode);
  rep.analytic_decode_mean = cfg.n_mu * rep.analytic_fresh_q;
  rep.pooled_decode_mean = stats.pooled_mean_m();

  const int k_max = stats.k_max;
  rep.mean_m.resize(k_max);
  rep.se_m.resize(k_max);
  rep.z_decode_rate.resize(k_max);
  rep.mean_ratio.resize(k_max);
  rep.expected_ratio.resize(k_max);
  rep.z_mixing.resize(k_max);

  for (int k = 1; k <= k_max; ++k) {
    const int i = k - 1;
    const int decoders = stats.ratio_trials[i];
    if (decoders == 0) {
      throw InsufficientDataError(
          "no trial decoded anything in slot " + std::to_string(k) +
          "; the conditional redundancy ratio is undefined");
    }
    rep.mean_m[i] = stats.mean_m(k);
    rep.se_m[i] = stats.se_m(k);
    rep.z_decode_rate[i] =
        rep.se_m[i] > 0.0
            ? (rep.mean_m[i] - rep.pooled_decode_mean) / rep.se_m[i]
            : 0.0;
    rep.mean_ratio[i] = stats.sum_ratio[i] / decoders;
    rep.expected_ratio[i] =
        (k >= 2 && cfg.n_mu > 0) ? stats.mean_n(k - 1) / cfg.n_mu : 0.0;
    if (k == 1) {
      rep.z_mixing[i] = 0.0;  // nothing is covered before the first slot
    } else {
      const double gap_mean = stats.sum_gap[i] / decoders;
      const double gap_se =
          se_from_sums(stats.sum_gap[i], stats.sum_gap2[i], decoders);
      rep.z_mixing[i] = gap_se > 0.0 ? gap_mean / gap_se : 0.0;
    }

    const double az1 = std::fabs(rep.z_decode_rate[i]);
    if (az1 > rep.max_abs_z_decode) rep.max_abs_z_decode = az1;
    if (az1 > 3.0) ++rep.decode_rate_violations;
    if (k >= 2) {
      const double az2 = std::fabs(rep.z_mixing[i]);
      if (az2 > rep.max_abs_z_mixing) rep.max_abs_z_mixing = az2;
      if (az2 > 3.0) ++rep.mixing_violations;
    }
  }
  return rep;
}

}  // namespace spreadnet
