#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qdr/naturality.hpp"

namespace qdr::cli {

// Malformed or inconsistent configuration (exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  int max_degree = 4;
  int r_max = 2;
  int p = 0;
  std::string format = "json";
  EngineOptions engine;
};

nlohmann::json load_json(const std::string& path);
// 64-bit FNV-1a of the canonical dump, as 16 hex digits.
std::string fingerprint(const nlohmann::json& j);

ModelPtr build_model(const nlohmann::json& cfg, const SignConventions& signs);
// Reads the "options" block; command-line flags are applied afterwards.
RunOptions read_options(const nlohmann::json& cfg);
// cfg["morphism"]: {"source": model, "target": model, "group_map": [[..]], "base_map": [..]}
ModelMorphism build_morphism(const nlohmann::json& cfg, const SignConventions& signs);

}  // namespace qdr::cli
