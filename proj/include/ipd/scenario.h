#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ipd/match.h"

namespace ipd {

inline constexpr const char* kScenarioSchema = "ipdlab/1";

// Bad input: malformed document, unknown field values, or a constructor rejection.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0;
  double limit = 0;
  std::string detail;
};

struct RunReport {
  std::string job;
  std::string digest;
  std::vector<CheckResult> checks;
  std::vector<std::string> artifacts;
  nlohmann::json data;
  bool pass() const;
  nlohmann::json to_json() const;
};

struct RunOverrides {
  std::optional<Arithmetic> mode;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> seed_range;
  unsigned threads = 0;  // 0 = hardware concurrency
};

nlohmann::json load_scenario(const std::string& path);
nlohmann::json parse_scenario(const std::string& text);

GameParams parse_game(const nlohmann::json& doc);
Strategy parse_strategy(const nlohmann::json& spec, const GameParams& g, const std::string& where);
WeightSequence parse_weights(const nlohmann::json& spec);

std::string inputs_digest(const nlohmann::json& doc, const RunOverrides& o);

// Runs the job, writes report.json and artifacts under out_dir.
RunReport run_scenario(const nlohmann::json& doc, const std::string& out_dir, const RunOverrides& o = {});

}  // namespace ipd
