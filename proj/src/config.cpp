#include "pcmc/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "pcmc/table.hpp"

namespace pcmc::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  }
}

std::uint64_t parse_count(const std::string& key, const std::string& v) {
  const double d = parse_double(key, v);
  if (d < 0.0 || d != std::floor(d))
    throw ConfigError(key + ": expected a nonnegative integer, got '" + v + "'");
  return static_cast<std::uint64_t>(d);
}

// Comma list or a:b:step range.
std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (v.find(':') != std::string::npos) {
    std::stringstream ss(v);
    std::string part;
    std::vector<double> abc;
    while (std::getline(ss, part, ':')) abc.push_back(parse_double(key, trim(part)));
    if (abc.size() != 3 || !(abc[2] > 0.0))
      throw ConfigError(key + ": range must be start:stop:step with step > 0");
    for (double x = abc[0]; x <= abc[1] + 1e-9 * abc[2]; x += abc[2])
      out.push_back(x);
    return out;
  }
  std::stringstream ss(v);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part = trim(part);
    if (!part.empty()) out.push_back(parse_double(key, part));
  }
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

struct RawConfig {
  std::map<std::string, std::string> kv;  // "section.key" -> value

  bool take(const std::string& key, std::string* out) {
    const auto it = kv.find(key);
    if (it == kv.end()) return false;
    *out = it->second;
    kv.erase(it);
    return true;
  }
};

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::stringstream ss(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (section.empty() || key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside a [section]");
    raw.kv[section + "." + key] = trim(line.substr(eq + 1));
  }
  return raw;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += table::format_number(xs[i]);
  }
  return out;
}

}  // namespace

std::vector<double> ExperimentConfig::alphas_rad() const {
  std::vector<double> out;
  out.reserve(alphas_deg.size());
  for (double a : alphas_deg) out.push_back(a * std::numbers::pi / 180.0);
  return out;
}

std::vector<double> ExperimentConfig::cdf_times() const {
  if (!times.empty()) return times;
  std::vector<double> out;
  for (int i = 1; i <= 20; ++i) out.push_back(0.5 * i);
  return out;
}

void ExperimentConfig::validate() const {
  if (!(r0 > rr) || !(rr > 0.0))
    throw ConfigError("geometry.r0/geometry.rr: need r0 > rr > 0");
  if (!(D > 0.0)) throw ConfigError("geometry.D: must be positive");
  if (d_grid.empty()) throw ConfigError("geometry.d_grid: empty grid");
  for (double d : d_grid)
    if (!(d > 0.0)) throw ConfigError("geometry.d_grid: entries must be positive");
  if (alphas_deg.empty()) throw ConfigError("region.alpha_deg: empty grid");
  for (double a : alphas_deg)
    if (!(a >= 0.0 && a <= 180.0))
      throw ConfigError("region.alpha_deg: entries must lie in [0, 180]");
  if (!(t_s > 0.0)) throw ConfigError("timing.t_s: must be positive");
  if (!(tap_tol > 0.0)) throw ConfigError("timing.tap_tol: must be positive");
  if (max_taps < 1) throw ConfigError("timing.max_taps: must be >= 1");
  for (double t : times)
    if (!(t > 0.0)) throw ConfigError("timing.times: entries must be positive");
  if (!(dt > 0.0)) throw ConfigError("simulation.dt: must be positive");
  if (!(t_max >= dt)) throw ConfigError("simulation.t_max: must be >= dt");
  if (n_molecules < 1) throw ConfigError("simulation.n_molecules: must be >= 1");
  if (!(n1 > n0)) throw ConfigError("link.n1: need n1 > n0");
  if (n_bits < 1) throw ConfigError("link.n_bits: must be >= 1");
  if (!(prior1 > 0.0 && prior1 < 1.0))
    throw ConfigError("link.prior1: must lie in (0, 1)");
  if (threshold < -1) throw ConfigError("link.threshold: must be -1 (auto) or >= 0");
  for (double m : m_grid)
    if (!(m >= 1.0) || m != std::floor(m))
      throw ConfigError("link.m_grid: entries must be positive integers");
  if (sweep != "alpha" && sweep != "molecules")
    throw ConfigError("link.sweep: must be 'alpha' or 'molecules'");
  if (format != "csv" && format != "json")
    throw ConfigError("output.format: must be 'csv' or 'json'");
  if (path.empty()) throw ConfigError("output.path: empty path");
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  out << "[geometry]\n"
      << "r0 = " << table::format_number(r0) << "\n"
      << "rr = " << table::format_number(rr) << "\n"
      << "D = " << table::format_number(D) << "\n"
      << "d_grid = " << join(d_grid) << "\n\n"
      << "[region]\n"
      << "alpha_deg = " << join(alphas_deg) << "\n\n"
      << "[timing]\n"
      << "t_s = " << table::format_number(t_s) << "\n"
      << "tap_tol = " << table::format_number(tap_tol) << "\n"
      << "max_taps = " << max_taps << "\n"
      << "taps_len = " << taps_len << "\n";
  if (!times.empty()) out << "times = " << join(times) << "\n";
  out << "\n[simulation]\n"
      << "dt = " << table::format_number(dt) << "\n"
      << "t_max = " << table::format_number(t_max) << "\n"
      << "n_molecules = " << n_molecules << "\n"
      << "seed = " << seed << "\n\n"
      << "[link]\n"
      << "n1 = " << n1 << "\n"
      << "n0 = " << n0 << "\n"
      << "threshold = " << threshold << "\n"
      << "n_bits = " << n_bits << "\n"
      << "prior1 = " << table::format_number(prior1) << "\n";
  if (!m_grid.empty()) out << "m_grid = " << join(m_grid) << "\n";
  out << "sweep = " << sweep << "\n\n"
      << "[output]\n"
      << "format = " << format << "\n"
      << "path = " << path << "\n";
  return out.str();
}

ExperimentConfig parse(const std::string& text) {
  RawConfig raw = tokenize(text);
  ExperimentConfig cfg;
  std::string v;
  if (raw.take("geometry.r0", &v)) cfg.r0 = parse_double("geometry.r0", v);
  if (raw.take("geometry.rr", &v)) cfg.rr = parse_double("geometry.rr", v);
  if (raw.take("geometry.D", &v)) cfg.D = parse_double("geometry.D", v);
  if (raw.take("geometry.d_grid", &v)) cfg.d_grid = parse_list("geometry.d_grid", v);
  if (raw.take("region.alpha_deg", &v))
    cfg.alphas_deg = parse_list("region.alpha_deg", v);
  if (raw.take("region.alpha_grid_deg", &v))
    cfg.alphas_deg = parse_list("region.alpha_grid_deg", v);
  if (raw.take("timing.t_s", &v)) cfg.t_s = parse_double("timing.t_s", v);
  if (raw.take("timing.tap_tol", &v)) cfg.tap_tol = parse_double("timing.tap_tol", v);
  if (raw.take("timing.max_taps", &v)) cfg.max_taps = parse_count("timing.max_taps", v);
  if (raw.take("timing.taps_len", &v)) cfg.taps_len = parse_count("timing.taps_len", v);
  if (raw.take("timing.times", &v)) cfg.times = parse_list("timing.times", v);
  if (raw.take("simulation.dt", &v)) cfg.dt = parse_double("simulation.dt", v);
  if (raw.take("simulation.t_max", &v)) cfg.t_max = parse_double("simulation.t_max", v);
  if (raw.take("simulation.n_molecules", &v))
    cfg.n_molecules = parse_count("simulation.n_molecules", v);
  if (raw.take("simulation.seed", &v)) cfg.seed = parse_count("simulation.seed", v);
  if (raw.take("link.n1", &v)) cfg.n1 = parse_count("link.n1", v);
  if (raw.take("link.n0", &v)) cfg.n0 = parse_count("link.n0", v);
  if (raw.take("link.threshold", &v)) {
    if (v == "auto" || v == "-1")
      cfg.threshold = -1;
    else
      cfg.threshold = static_cast<long long>(parse_count("link.threshold", v));
  }
  if (raw.take("link.n_bits", &v)) cfg.n_bits = parse_count("link.n_bits", v);
  if (raw.take("link.prior1", &v)) cfg.prior1 = parse_double("link.prior1", v);
  if (raw.take("link.m_grid", &v)) cfg.m_grid = parse_list("link.m_grid", v);
  if (raw.take("link.sweep", &v)) cfg.sweep = v;
  if (raw.take("output.format", &v)) cfg.format = v;
  if (raw.take("output.path", &v)) cfg.path = v;
  if (!raw.kv.empty())
    throw ConfigError("unknown key: " + raw.kv.begin()->first);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace pcmc::config
