#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace oka {

struct ScenarioConfig {
  std::string scenario;
  std::map<std::string, double> params;
  size_t trials = 0;  // 0 = scenario default
  uint64_t master_seed = 1;
  size_t workers = 1;
};

struct ScenarioAssertion {
  std::string name;
  bool pass = false;
  double value = 0;
  double bound = 0;
};

struct ScenarioResult {
  std::string scenario;
  bool pass = false;
  std::vector<ScenarioAssertion> assertions;
  nlohmann::json summary;  // seeds, metrics, assertion table; no wall-clock
  std::string csv;         // "# okalab-csv v1" header + metric rows

  nlohmann::json summary_with_assertions() const;
};

// Name -> one-line description for every runnable scenario.
const std::vector<std::pair<std::string, std::string>>& scenario_catalog();

// Executes one scenario. Output depends only on (config minus workers);
// wall-clock timing is deliberately left out of the artifacts so reruns are
// byte-identical.
ScenarioResult run_scenario(const ScenarioConfig& config);

}  // namespace oka
