#include "acid/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "acid/errors.hpp"

namespace acid {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

const std::set<std::string>& common_keys() {
  static const std::set<std::string> keys = {
      "seed", "threads", "scheme",
      "kernel.shape", "kernel.dimension", "kernel.laplace_c",
      "eta.family", "eta.params",
      "bandwidth.method", "bandwidth.scale_c", "bandwidth.endpoint_reps",
      "model.name", "model.sigma2", "model.tau", "model.nu",
      "theta0", "constraints.low", "constraints.high",
      "gauss.theta0", "gauss.sigma2",
  };
  return keys;
}

const std::set<std::string>& command_keys(const std::string& command) {
  static const std::map<std::string, std::set<std::string>> per_command = {
      {"resample",
       {"resample.m", "resample.b", "resample.functional", "resample.q",
        "resample.t", "resample.x", "grid.construction", "grid.min",
        "grid.max", "grid.points", "grid.explicit"}},
      {"diagnose",
       {"diagnose.check", "diagnose.k", "diagnose.horizon",
        "diagnose.epsilon", "diagnose.sets", "diagnose.checkpoints",
        "diagnose.threshold", "resample.m"}},
      {"simulate",
       {"simulate.kind", "simulate.variant", "simulate.n",
        "simulate.datasets", "simulate.test_points"}},
      {"benchmark",
       {"benchmark.table", "benchmark.datasets", "benchmark.n",
        "benchmark.n_test", "resample.m", "resample.b"}},
      {"bandwidth", {"resample.m"}},
  };
  auto it = per_command.find(command);
  if (it == per_command.end())
    throw config_error("unknown command: " + command);
  return it->second;
}

}  // namespace

RunConfig RunConfig::parse_string(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(line_no) +
                         ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw config_error("config line " + std::to_string(line_no) +
                         ": empty key or value");
    if (config.kv_.count(key))
      throw config_error("duplicate config key: " + key);
    config.kv_[key] = value;
  }
  return config;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

void RunConfig::set(const std::string& key, const std::string& value) {
  kv_[key] = value;
}

bool RunConfig::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string RunConfig::get_string(const std::string& key,
                                  const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

std::string RunConfig::require_string(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw config_error("missing config key: " + key);
  return it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  return require_double(key);
}

double RunConfig::require_double(const std::string& key) const {
  const std::string raw = require_string(key);
  try {
    std::size_t used = 0;
    double v = std::stod(raw, &used);
    if (used != raw.size()) throw config_error("");
    return v;
  } catch (const std::exception&) {
    throw config_error("config key " + key + ": expected a number, got '" +
                       raw + "'");
  }
}

long long RunConfig::get_int(const std::string& key, long long fallback) const {
  if (!has(key)) return fallback;
  return require_int(key);
}

long long RunConfig::require_int(const std::string& key) const {
  const std::string raw = require_string(key);
  try {
    std::size_t used = 0;
    long long v = std::stoll(raw, &used);
    if (used != raw.size()) throw config_error("");
    return v;
  } catch (const std::exception&) {
    throw config_error("config key " + key + ": expected an integer, got '" +
                       raw + "'");
  }
}

std::uint64_t RunConfig::get_u64(const std::string& key,
                                 std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string raw = require_string(key);
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(raw, &used);
    if (used != raw.size()) throw config_error("");
    return v;
  } catch (const std::exception&) {
    throw config_error("config key " + key +
                       ": expected a non-negative integer, got '" + raw + "'");
  }
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string raw = require_string(key);
  if (raw == "true" || raw == "1") return true;
  if (raw == "false" || raw == "0") return false;
  throw config_error("config key " + key + ": expected true/false");
}

std::vector<double> RunConfig::get_list(const std::string& key,
                                        std::vector<double> fallback) const {
  if (!has(key)) return fallback;
  return require_list(key);
}

std::vector<double> RunConfig::require_list(const std::string& key) const {
  const std::string raw = require_string(key);
  std::vector<double> out;
  std::stringstream in(raw);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    cell = trim(cell);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw config_error("");
    } catch (const std::exception&) {
      throw config_error("config key " + key + ": expected numbers, got '" +
                         cell + "'");
    }
  }
  if (out.empty()) throw config_error("config key " + key + ": empty list");
  return out;
}

void RunConfig::validate_keys(const std::string& command) const {
  const auto& common = common_keys();
  const auto& specific = command_keys(command);
  for (const auto& [key, value] : kv_) {
    (void)value;
    if (!common.count(key) && !specific.count(key))
      throw config_error("unknown config key: " + key);
  }
}

std::string RunConfig::canonical_text() const {
  std::ostringstream out;
  for (const auto& [key, value] : kv_) out << key << " = " << value << '\n';
  return out.str();
}

}  // namespace acid
