#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace oqt {

enum class RunMode { simulate, infer, rb, dynamics, statetomo, report };

std::string mode_name(RunMode mode);
RunMode parse_mode(const std::string& name);

// One validated run description. Every key is checked against the mode's
// whitelist and its expected type; unknown keys are rejected outright so a
// typo cannot silently fall back to a default.
struct RunConfig {
  RunMode mode = RunMode::simulate;
  std::uint64_t seed = 0;
  int particles = 2000;
  std::string out = ".";
  nlohmann::json params;

  double num(const std::string& key, double fallback) const;
  long integer(const std::string& key, long fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  bool has(const std::string& key) const;
};

nlohmann::json load_json_file(const std::string& path);
RunConfig config_from_json(const nlohmann::json& j);
RunConfig parse_config(const std::string& path);

}  // namespace oqt
