#include "oqt/io/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

namespace oqt {

namespace {

const std::map<std::string, RunMode>& mode_table() {
  static const std::map<std::string, RunMode> table = {
      {"simulate", RunMode::simulate}, {"infer", RunMode::infer},
      {"rb", RunMode::rb},             {"dynamics", RunMode::dynamics},
      {"statetomo", RunMode::statetomo}, {"report", RunMode::report},
  };
  return table;
}

// 'i' integer, 'n' number, 's' string.
const std::map<std::string, char>& key_kinds() {
  static const std::map<std::string, char> kinds = {
      {"version", 'i'},       {"mode", 's'},           {"seed", 'i'},
      {"particles", 'i'},     {"out", 's'},            {"protocol", 's'},
      {"dataset", 's'},       {"testset", 's'},        {"checkpoint", 's'},
      {"omega", 'n'},         {"epsilon", 'n'},        {"time_step", 'n'},
      {"state_depol", 'n'},   {"effect_depol", 'n'},   {"train_min", 'i'},
      {"train_max", 'i'},     {"test_min", 'i'},       {"test_max", 'i'},
      {"shots", 'i'},         {"omega_min", 'n'},      {"omega_max", 'n'},
      {"pulse_stddev", 'n'},  {"spam_depol_max", 'n'}, {"depth_max", 'i'},
      {"gate_eps", 'n'},      {"spam_eps", 'n'},       {"train_count", 'i'},
      {"test_draws", 'i'},    {"mix_eps", 'n'},        {"angle_variance", 'n'},
      {"states", 'i'},        {"test_count", 'i'},     {"depol_max", 'n'},
      {"group_order", 'i'},   {"t_span", 'n'},         {"steps", 'i'},
      {"alpha_scale", 'n'},   {"snapshots", 'i'},      {"snapshot_dt", 'n'},
  };
  return kinds;
}

const std::set<std::string>& allowed_keys(RunMode mode) {
  static const std::set<std::string> common = {"version", "mode", "seed", "particles", "out"};
  static const std::set<std::string> protocol = {
      "protocol",  "omega",    "epsilon",  "time_step", "state_depol", "effect_depol",
      "train_min", "train_max", "test_min", "test_max",  "shots",       "depth_max",
      "gate_eps",  "spam_eps"};
  auto with_common = [](std::set<std::string> extra) {
    extra.insert(common.begin(), common.end());
    return extra;
  };
  static const std::set<std::string> simulate = with_common(protocol);
  static const std::set<std::string> infer = [] {
    std::set<std::string> keys = simulate;
    for (const char* k : {"dataset", "testset", "omega_min", "omega_max", "pulse_stddev",
                          "spam_depol_max"})
      keys.insert(k);
    return keys;
  }();
  static const std::set<std::string> rb = with_common({"train_count", "train_min", "train_max",
                                                       "shots", "test_draws", "mix_eps",
                                                       "angle_variance"});
  static const std::set<std::string> statetomo =
      with_common({"states", "train_count", "train_min", "train_max", "test_count", "test_min",
                   "test_max", "shots", "pulse_stddev", "depol_max"});
  static const std::set<std::string> dynamics = with_common(
      {"group_order", "t_span", "steps", "alpha_scale", "snapshots", "snapshot_dt"});
  static const std::set<std::string> report = with_common({"dataset", "checkpoint"});
  switch (mode) {
    case RunMode::simulate: return simulate;
    case RunMode::infer: return infer;
    case RunMode::rb: return rb;
    case RunMode::dynamics: return dynamics;
    case RunMode::statetomo: return statetomo;
    case RunMode::report: return report;
  }
  return simulate;
}

[[noreturn]] void fail(const std::string& message) {
  throw std::runtime_error("config: " + message);
}

}  // namespace

std::string mode_name(RunMode mode) {
  for (const auto& [name, m] : mode_table())
    if (m == mode) return name;
  return "?";
}

RunMode parse_mode(const std::string& name) {
  const auto it = mode_table().find(name);
  if (it == mode_table().end()) fail("unknown mode '" + name + "'");
  return it->second;
}

double RunConfig::num(const std::string& key, double fallback) const {
  return params.contains(key) ? params.at(key).get<double>() : fallback;
}

long RunConfig::integer(const std::string& key, long fallback) const {
  return params.contains(key) ? params.at(key).get<long>() : fallback;
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) const {
  return params.contains(key) ? params.at(key).get<std::string>() : fallback;
}

bool RunConfig::has(const std::string& key) const { return params.contains(key); }

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("config: '" + path + "' is not valid JSON: " + e.what());
  }
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail("top level must be an object");
  if (!j.contains("version")) fail("missing required key 'version'");
  if (!j.at("version").is_number_integer() || j.at("version").get<long>() != 1)
    fail("'version' must be the integer 1");
  if (!j.contains("mode") || !j.at("mode").is_string()) fail("missing required string key 'mode'");
  if (!j.contains("seed")) fail("missing required key 'seed'");
  if (!j.at("seed").is_number_unsigned() &&
      !(j.at("seed").is_number_integer() && j.at("seed").get<long long>() >= 0))
    fail("'seed' must be a non-negative integer");

  RunConfig cfg;
  cfg.mode = parse_mode(j.at("mode").get<std::string>());
  cfg.seed = j.at("seed").get<std::uint64_t>();

  const auto& allowed = allowed_keys(cfg.mode);
  for (const auto& [key, value] : j.items()) {
    const auto kind = key_kinds().find(key);
    if (kind == key_kinds().end()) fail("unknown key '" + key + "'");
    if (allowed.find(key) == allowed.end())
      fail("key '" + key + "' does not apply to mode '" + mode_name(cfg.mode) + "'");
    switch (kind->second) {
      case 'i':
        if (!value.is_number_integer()) fail("'" + key + "' must be an integer");
        break;
      case 'n':
        if (!value.is_number()) fail("'" + key + "' must be a number");
        break;
      case 's':
        if (!value.is_string()) fail("'" + key + "' must be a string");
        break;
    }
  }

  if (j.contains("particles")) cfg.particles = static_cast<int>(j.at("particles").get<long>());
  const bool inference_mode = cfg.mode == RunMode::infer || cfg.mode == RunMode::rb ||
                              cfg.mode == RunMode::statetomo;
  if (inference_mode && cfg.particles < 2) fail("'particles' must be at least 2 for inference modes");
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  cfg.params = j;
  return cfg;
}

RunConfig parse_config(const std::string& path) { return config_from_json(load_json_file(path)); }

}  // namespace oqt
