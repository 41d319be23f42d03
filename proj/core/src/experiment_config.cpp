#include "spreadnet/experiment_config.hpp"

#include <cerrno>
#include <charconv>
#include <climits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spreadnet/errors.hpp"

namespace spreadnet {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail_line(int line_no, const std::string& what) {
  throw ValidationError("config line " + std::to_string(line_no) + ": " + what);
}

double want_double(const std::string& key, const std::string& value,
                   int line_no) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    fail_line(line_no, "cannot parse '" + value + "' as a number for " + key);
  }
  return v;
}

long long want_integer(const std::string& key, const std::string& value,
                       int line_no) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    fail_line(line_no, "cannot parse '" + value + "' as an integer for " + key);
  }
  return v;
}

int want_int(const std::string& key, const std::string& value, int line_no) {
  const long long v = want_integer(key, value, line_no);
  if (v < INT_MIN || v > INT_MAX) fail_line(line_no, key + " out of range");
  return static_cast<int>(v);
}

std::uint64_t want_u64(const std::string& key, const std::string& value,
                       int line_no) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE ||
      value.find('-') != std::string::npos) {
    fail_line(line_no,
              "cannot parse '" + value + "' as an unsigned integer for " + key);
  }
  return v;
}

void apply(ExperimentConfig& cfg, const std::string& key,
           const std::string& value, int line_no) {
  if (key == "n_bs") {
    cfg.net.n_bs = want_int(key, value, line_no);
  } else if (key == "n_mu") {
    cfg.net.n_mu = want_int(key, value, line_no);
  } else if (key == "n_src") {
    cfg.net.n_src = want_int(key, value, line_no);
  } else if (key == "area") {
    cfg.net.area = want_double(key, value, line_no);
  } else if (key == "beta") {
    cfg.net.beta = want_double(key, value, line_no);
  } else if (key == "alpha") {
    cfg.net.alpha = want_double(key, value, line_no);
  } else if (key == "power_cap") {
    cfg.net.power_cap = want_double(key, value, line_no);
  } else if (key == "slot_cap") {
    cfg.net.slot_cap = want_int(key, value, line_no);
  } else if (key == "target_ratio") {
    cfg.net.target_ratio = want_double(key, value, line_no);
  } else if (key == "mu") {
    cfg.mu = want_double(key, value, line_no);
  } else if (key == "mode") {
    if (value == "unicast") {
      cfg.mode = Mode::Unicast;
    } else if (value == "broadcast") {
      cfg.mode = Mode::Broadcast;
    } else {
      fail_line(line_no, "mode must be unicast or broadcast");
    }
  } else if (key == "mobility") {
    if (value == "iid") {
      cfg.mobility = MobilityModel::IID;
    } else if (value == "random_direction") {
      cfg.mobility = MobilityModel::RandomDirection;
    } else {
      fail_line(line_no, "mobility must be iid or random_direction");
    }
  } else if (key == "distance") {
    if (value == "torus") {
      cfg.distance = DistanceModel::Torus;
    } else if (value == "bounded") {
      cfg.distance = DistanceModel::Bounded;
    } else {
      fail_line(line_no, "distance must be torus or bounded");
    }
  } else if (key == "uplink") {
    if (value == "analysis_matched") {
      cfg.uplink = UplinkModel::AnalysisMatched;
    } else if (value == "structural") {
      cfg.uplink = UplinkModel::Structural;
    } else {
      fail_line(line_no, "uplink must be analysis_matched or structural");
    }
  } else if (key == "speed") {
    cfg.speed = want_double(key, value, line_no);
  } else if (key == "slot_period") {
    cfg.slot_period = want_double(key, value, line_no);
  } else if (key == "k_max") {
    cfg.k_max = want_int(key, value, line_no);
  } else if (key == "trials") {
    cfg.trials = want_int(key, value, line_no);
  } else if (key == "seed") {
    cfg.seed = want_u64(key, value, line_no);
  } else if (key == "out") {
    cfg.out = value;
  } else {
    fail_line(line_no, "unknown key '" + key + "'");
  }
}

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

SimOptions ExperimentConfig::sim_options() const {
  SimOptions opts;
  opts.mobility = mobility;
  opts.distance = distance;
  opts.uplink = uplink;
  opts.speed = speed;
  opts.slot_period = slot_period;
  return opts;
}

void ExperimentConfig::validate() const {
  net.validate();
  if (!std::isfinite(mu) || mu <= 0.0) {
    throw ValidationError("mu must be finite and positive");
  }
  if (!std::isfinite(speed) || speed < 0.0) {
    throw ValidationError("speed must be finite and non-negative");
  }
  if (!std::isfinite(slot_period) || slot_period <= 0.0) {
    throw ValidationError("slot_period must be finite and positive");
  }
  if (k_max < 1) throw ValidationError("k_max must be at least 1");
  if (trials < 1) throw ValidationError("trials must be at least 1");
}

ExperimentConfig reference_preset() {
  ExperimentConfig cfg;
  cfg.net.n_bs = 8;
  cfg.net.n_mu = 400;
  cfg.net.n_src = 4;
  cfg.net.area = 4.0e6;
  cfg.net.beta = 1.0;
  cfg.net.alpha = 4.0;
  cfg.net.power_cap = 0.064;
  cfg.net.slot_cap = 45;
  cfg.net.target_ratio = 0.9;
  cfg.mu = 0.064;
  cfg.mode = Mode::Broadcast;
  cfg.mobility = MobilityModel::RandomDirection;
  cfg.distance = DistanceModel::Torus;
  cfg.uplink = UplinkModel::AnalysisMatched;
  cfg.speed = 5.0;
  cfg.slot_period = 600.0;
  cfg.k_max = 45;
  cfg.trials = 10000;
  cfg.seed = 1;
  return cfg;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      fail_line(line_no, "expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) fail_line(line_no, "missing key before '='");
    apply(cfg, key, value, line_no);
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "n_bs = " << cfg.net.n_bs << '\n';
  out << "n_mu = " << cfg.net.n_mu << '\n';
  out << "n_src = " << cfg.net.n_src << '\n';
  out << "area = " << shortest(cfg.net.area) << '\n';
  out << "beta = " << shortest(cfg.net.beta) << '\n';
  out << "alpha = " << shortest(cfg.net.alpha) << '\n';
  out << "power_cap = " << shortest(cfg.net.power_cap) << '\n';
  out << "slot_cap = " << cfg.net.slot_cap << '\n';
  out << "target_ratio = " << shortest(cfg.net.target_ratio) << '\n';
  out << "mu = " << shortest(cfg.mu) << '\n';
  out << "mode = " << (cfg.mode == Mode::Unicast ? "unicast" : "broadcast")
      << '\n';
  out << "mobility = "
      << (cfg.mobility == MobilityModel::IID ? "iid" : "random_direction")
      << '\n';
  out << "distance = "
      << (cfg.distance == DistanceModel::Torus ? "torus" : "bounded") << '\n';
  out << "uplink = "
      << (cfg.uplink == UplinkModel::AnalysisMatched ? "analysis_matched"
                                                     : "structural")
      << '\n';
  out << "speed = " << shortest(cfg.speed) << '\n';
  out << "slot_period = " << shortest(cfg.slot_period) << '\n';
  out << "k_max = " << cfg.k_max << '\n';
  out << "trials = " << cfg.trials << '\n';
  out << "seed = " << cfg.seed << '\n';
  if (!cfg.out.empty()) out << "out = " << cfg.out << '\n';
  return out.str();
}

double beta_from_db(double db) {
  if (!std::isfinite(db)) throw ValidationError("dB value must be finite");
  return std::pow(10.0, db / 10.0);
}

}  // namespace spreadnet
