#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "spreadnet/closed_form.hpp"
#include "spreadnet/csv.hpp"
#include "spreadnet/diagnostics.hpp"
#include "spreadnet/errors.hpp"
#include "spreadnet/experiment_config.hpp"
#include "spreadnet/optimizer.hpp"
#include "spreadnet/simulator.hpp"
#include "spreadnet/success_integral.hpp"

namespace {

using namespace spreadnet;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

const char* mode_name(Mode m) {
  return m == Mode::Unicast ? "unicast" : "broadcast";
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot write output file: " + path);
  return os;
}

int scaled_count(int count, double scale) {
  return static_cast<int>(std::lround(count * scale));
}

double relative_deviation(double reference, double value) {
  if (reference != 0.0) return std::fabs(reference - value) / std::fabs(reference);
  return value == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

int cmd_predict(const ExperimentConfig& cfg) {
  const CoverageCurve curve = coverage_curve(cfg.net, cfg.mu, cfg.mode, cfg.k_max);
  const std::string path = cfg.out.empty() ? "predict.csv" : cfg.out;
  std::ofstream os = open_output(path);
  CsvWriter csv(os);
  csv.header({"k", "expected_covered", "ratio", "redundancy"});
  double final_ratio = 0.0;
  for (int k = 1; k <= cfg.k_max; ++k) {
    const double covered = curve.per_slot_expected_covered[k - 1];
    const double ratio = cfg.net.n_mu > 0 ? covered / cfg.net.n_mu : 0.0;
    const double red = redundancy_from_q(cfg.net.n_mu, curve.fresh_q, k);
    const double row[] = {static_cast<double>(k), covered, ratio, red};
    csv.row(row);
    final_ratio = ratio;
  }
  std::cout << "mode: " << mode_name(cfg.mode) << ", transmit power: " << fmt(cfg.mu)
            << "\n"
            << "p_idle: " << fmt(curve.p_idle) << ", p_suc: " << fmt(curve.p_suc)
            << ", fresh coverage per slot: " << fmt(curve.fresh_q) << "\n"
            << "expected covered ratio after " << cfg.k_max
            << " slots: " << fmt(final_ratio) << "\n"
            << "wrote " << path << " (" << cfg.k_max << " rows)\n";
  return 0;
}

int cmd_verify(const ExperimentConfig& cfg) {
  constexpr double kTolerance = 1e-6;
  constexpr int kMuPoints = 6;
  constexpr int kBetaPoints = 6;
  const double scales[] = {0.5, 1.0, 2.0};

  const std::string path = cfg.out.empty() ? "verify.csv" : cfg.out;
  std::ofstream os = open_output(path);
  CsvWriter csv(os);
  csv.header({"mu", "beta", "density_scale", "unicast_closed", "unicast_numeric",
              "unicast_rel_dev", "broadcast_closed", "broadcast_numeric",
              "broadcast_rel_dev"});

  double max_dev = 0.0;
  double at_mu = 0.0, at_beta = 0.0, at_scale = 0.0;
  const char* at_mode = "unicast";
  int points = 0;
  for (double scale : scales) {
    NetworkConfig net = cfg.net;
    net.n_bs = scaled_count(cfg.net.n_bs, scale);
    net.n_mu = scaled_count(cfg.net.n_mu, scale);
    net.n_src = scaled_count(cfg.net.n_src, scale);
    for (int i = 0; i < kMuPoints; ++i) {
      const double mu =
          1e-3 * std::pow(10.0 / 1e-3, i / static_cast<double>(kMuPoints - 1));
      for (int j = 0; j < kBetaPoints; ++j) {
        net.beta =
            0.1 * std::pow(10.0 / 0.1, j / static_cast<double>(kBetaPoints - 1));
        const double unicast_closed = p_suc_unicast(net, mu);
        const double unicast_numeric = p_suc_numeric(net, mu, Mode::Unicast);
        const double broadcast_closed = p_suc_broadcast(net, mu);
        const double broadcast_numeric = p_suc_numeric(net, mu, Mode::Broadcast);
        const double unicast_dev =
            relative_deviation(unicast_closed, unicast_numeric);
        const double broadcast_dev =
            relative_deviation(broadcast_closed, broadcast_numeric);
        const double row[] = {mu,
                              net.beta,
                              scale,
                              unicast_closed,
                              unicast_numeric,
                              unicast_dev,
                              broadcast_closed,
                              broadcast_numeric,
                              broadcast_dev};
        csv.row(row);
        ++points;
        if (unicast_dev > max_dev) {
          max_dev = unicast_dev;
          at_mu = mu;
          at_beta = net.beta;
          at_scale = scale;
          at_mode = "unicast";
        }
        if (broadcast_dev > max_dev) {
          max_dev = broadcast_dev;
          at_mu = mu;
          at_beta = net.beta;
          at_scale = scale;
          at_mode = "broadcast";
        }
      }
    }
  }
  std::cout << "checked " << points << " grid points (" << 2 * points
            << " closed-form values) against adaptive quadrature\n"
            << "max relative deviation: " << fmt(max_dev) << " at mu=" << fmt(at_mu)
            << ", beta=" << fmt(at_beta) << ", density scale " << fmt(at_scale)
            << ", " << at_mode << " mode\n"
            << "wrote " << path << " (" << points << " rows)\n";
  if (!(max_dev <= kTolerance)) {
    std::cout << "verify: FAIL (tolerance " << fmt(kTolerance) << ")\n";
    return 4;
  }
  std::cout << "verify: PASS (tolerance " << fmt(kTolerance) << ")\n";
  return 0;
}

int cmd_simulate(const ExperimentConfig& cfg) {
  const AggregatedStats stats =
      run_experiment(cfg.net, {cfg.mu}, cfg.mode, cfg.sim_options(), cfg.k_max,
                     cfg.trials, cfg.seed);
  const HomogeneityReport rep =
      homogeneity_diagnostics(stats, cfg.net, cfg.mu, cfg.mode);
  const CoverageCurve curve = coverage_curve(cfg.net, cfg.mu, cfg.mode, cfg.k_max);

  const std::string path = cfg.out.empty() ? "simulate.csv" : cfg.out;
  std::ofstream os = open_output(path);
  CsvWriter csv(os);
  csv.header({"k", "mean_ratio", "se", "analytic_ratio", "z_homog_1", "z_homog_2"});
  for (int k = 1; k <= cfg.k_max; ++k) {
    const double analytic =
        cfg.net.n_mu > 0
            ? curve.per_slot_expected_covered[k - 1] / cfg.net.n_mu
            : 0.0;
    const double row[] = {static_cast<double>(k),
                          stats.mean_coverage_ratio(k),
                          stats.se_coverage_ratio(k),
                          analytic,
                          rep.z_decode_rate[k - 1],
                          rep.z_mixing[k - 1]};
    csv.row(row);
  }
  std::cout << "trials: " << cfg.trials << ", slots: " << cfg.k_max
            << ", mode: " << mode_name(cfg.mode) << ", seed: " << cfg.seed << "\n"
            << "decode mean per slot: analytic " << fmt(rep.analytic_decode_mean)
            << ", pooled empirical " << fmt(rep.pooled_decode_mean) << "\n"
            << "slot-constancy z (decode rate): max |z| "
            << fmt(rep.max_abs_z_decode) << ", violations "
            << rep.decode_rate_violations << "/" << cfg.k_max << "\n"
            << "mixing z (covered fraction among decoders): max |z| "
            << fmt(rep.max_abs_z_mixing) << ", violations "
            << rep.mixing_violations << "/" << cfg.k_max - 1 << "\n"
            << "final covered ratio: empirical "
            << fmt(stats.mean_coverage_ratio(cfg.k_max)) << " +- "
            << fmt(stats.se_coverage_ratio(cfg.k_max)) << ", analytic "
            << fmt(cfg.net.n_mu > 0
                       ? curve.per_slot_expected_covered[cfg.k_max - 1] /
                             cfg.net.n_mu
                       : 0.0)
            << "\n"
            << "wrote " << path << " (" << cfg.k_max << " rows)\n";
  return 0;
}

int cmd_optimize(const ExperimentConfig& cfg, bool with_oracle) {
  const OptimizationResult cons = solve_constant(cfg.net);
  const OptimizationResult dyn = solve_dynamic(cfg.net);

  std::cout << "constant-power regime:\n"
            << "  slots (k*):           " << cons.k_star << "\n"
            << "  per-slot power:       " << fmt(cons.schedule.powers.front())
            << "\n"
            << "  final covered ratio:  " << fmt(cons.predicted_final_ratio)
            << "\n"
            << "  redundant receptions: " << fmt(cons.predicted_redundancy)
            << "\n";
  std::cout << "dynamic-power regime:\n"
            << "  slots (k*):           " << dyn.k_star << "\n";
  if (dyn.k_star > 1) {
    std::cout << "  slots 1.." << dyn.k_star - 1
              << " power:     " << fmt(dyn.schedule.powers.front()) << " (cap)\n";
  }
  std::cout << "  final-slot power:     " << fmt(dyn.schedule.powers.back())
            << " (recurrence inversion)\n";
  if (std::isfinite(dyn.last_power_closed_form)) {
    std::cout << "  closed-form candidate: " << fmt(dyn.last_power_closed_form)
              << " (reported for comparison)\n";
  }
  std::cout << "  final covered ratio:  " << fmt(dyn.predicted_final_ratio) << "\n"
            << "  redundant receptions: " << fmt(dyn.predicted_redundancy) << "\n";
  const double saved = cons.predicted_redundancy - dyn.predicted_redundancy;
  std::cout << "dynamic power saves " << fmt(saved)
            << " expected redundant receptions over constant power\n";

  const std::string path = cfg.out.empty() ? "optimize.csv" : cfg.out;
  std::ofstream os = open_output(path);
  CsvWriter csv(os);
  csv.header(
      {"slot", "constant_power", "constant_ratio", "dynamic_power", "dynamic_ratio"});
  const int rows = std::max(cons.k_star, dyn.k_star);
  const auto at = [](const std::vector<double>& xs, int i) {
    return xs[std::min<std::size_t>(i, xs.size() - 1)];
  };
  for (int k = 0; k < rows; ++k) {
    const double row[] = {static_cast<double>(k + 1),
                          at(cons.schedule.powers, k),
                          at(cons.schedule.per_slot_ratio, k),
                          at(dyn.schedule.powers, k),
                          at(dyn.schedule.per_slot_ratio, k)};
    csv.row(row);
  }
  std::cout << "wrote " << path << " (" << rows << " rows)\n";

  if (!with_oracle) return 0;

  constexpr int kGrid = 10000;
  bool ok = true;
  const auto check = [&](const char* label, const OptimizationResult& solved,
                         Regime regime) {
    const OptimizationResult oracle =
        grid_oracle(cfg.net, kGrid, 1, cfg.net.slot_cap, regime);
    const double slack = 1e-9 * std::max(1.0, solved.predicted_redundancy);
    const bool k_match = oracle.k_star == solved.k_star;
    const bool not_beaten =
        oracle.predicted_redundancy >= solved.predicted_redundancy - slack;
    std::cout << "grid cross-check (" << label << ", " << kGrid
              << " power levels, slots 1.." << cfg.net.slot_cap
              << "): k* " << oracle.k_star << " vs " << solved.k_star
              << ", grid objective " << fmt(oracle.predicted_redundancy)
              << " vs " << fmt(solved.predicted_redundancy) << " -> "
              << (k_match && not_beaten ? "OK" : "MISMATCH") << "\n";
    ok = ok && k_match && not_beaten;
  };
  check("constant", cons, Regime::ConstantPower);
  check("dynamic", dyn, Regime::DynamicPower);
  if (!ok) {
    std::cout << "optimize: oracle cross-check FAILED\n";
    return 4;
  }
  std::cout << "optimize: oracle cross-check passed\n";
  return 0;
}

struct SubFlags {
  CLI::App* cmd = nullptr;
  std::string config_path;
  std::string preset;
  std::string out;
  double beta_db = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  bool oracle = false;
  CLI::Option* opt_out = nullptr;
  CLI::Option* opt_beta_db = nullptr;
  CLI::Option* opt_trials = nullptr;
  CLI::Option* opt_seed = nullptr;
};

SubFlags* add_subcommand(CLI::App& app, std::vector<SubFlags>& store,
                         const char* name, const char* desc, bool sim_flags,
                         bool oracle_flag) {
  SubFlags& f = store.emplace_back();
  f.cmd = app.add_subcommand(name, desc);
  auto* cfg_opt = f.cmd->add_option("--config", f.config_path,
                                    "experiment config file (key = value)");
  auto* preset_opt =
      f.cmd->add_option("--preset", f.preset, "built-in scenario")
          ->check(CLI::IsMember({"fig2"}));
  cfg_opt->excludes(preset_opt);
  preset_opt->excludes(cfg_opt);
  f.opt_beta_db =
      f.cmd->add_option("--beta-db", f.beta_db, "SIR threshold in dB (overrides beta)");
  f.opt_out = f.cmd->add_option("--out", f.out, "output CSV path");
  if (sim_flags) {
    f.opt_trials = f.cmd->add_option("--trials", f.trials, "Monte Carlo trials")
                       ->check(CLI::PositiveNumber);
    f.opt_seed = f.cmd->add_option("--seed", f.seed, "root RNG seed");
  }
  if (oracle_flag) {
    f.cmd->add_flag("--oracle", f.oracle, "run the grid cross-check");
  }
  return &f;
}

ExperimentConfig build_config(const SubFlags& f) {
  ExperimentConfig cfg;
  if (!f.preset.empty()) cfg = reference_preset();
  if (!f.config_path.empty()) cfg = load_config(f.config_path);
  if (f.opt_beta_db != nullptr && f.opt_beta_db->count() > 0) {
    cfg.net.beta = beta_from_db(f.beta_db);
  }
  if (f.opt_trials != nullptr && f.opt_trials->count() > 0) cfg.trials = f.trials;
  if (f.opt_seed != nullptr && f.opt_seed->count() > 0) cfg.seed = f.seed;
  if (f.opt_out != nullptr && f.opt_out->count() > 0) cfg.out = f.out;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "coverage, redundancy, and power optimization for slot-based "
      "device-to-device information spreading under cellular uplink "
      "interference"};
  app.require_subcommand(1);

  std::vector<SubFlags> subs;
  subs.reserve(4);
  SubFlags* predict = add_subcommand(
      app, subs, "predict", "analytic coverage curve and redundancy", false, false);
  SubFlags* verify = add_subcommand(
      app, subs, "verify", "closed forms vs numerical integration", false, false);
  SubFlags* simulate = add_subcommand(
      app, subs, "simulate", "Monte Carlo coverage with homogeneity diagnostics",
      true, false);
  SubFlags* optimize = add_subcommand(
      app, subs, "optimize", "minimal-redundancy power and slot count", false,
      true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (predict->cmd->parsed()) return cmd_predict(build_config(*predict));
    if (verify->cmd->parsed()) return cmd_verify(build_config(*verify));
    if (simulate->cmd->parsed()) return cmd_simulate(build_config(*simulate));
    if (optimize->cmd->parsed()) {
      return cmd_optimize(build_config(*optimize), optimize->oracle);
    }
    std::cerr << "error: no subcommand selected\n";
    return 2;
  } catch (const QuadratureError& e) {
    std::cerr << "quadrature error: " << e.what() << "\n";
    return 5;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const DegenerateDenominatorError& e) {
    std::cerr << "degenerate denominator: " << e.what() << "\n";
    return 3;
  } catch (const InsufficientDataError& e) {
    std::cerr << "insufficient data: " << e.what() << "\n";
    return 6;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
