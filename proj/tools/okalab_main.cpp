// okalab: experiment runner for the oracle key-agreement laboratory.
//
// Subcommands:
//   run        execute one scenario, write <scenario>.csv and <scenario>.json
//   list       print the scenario catalog
//   calibrate  fit and persist an accuracy profile for the set solver
//
// Artifacts are byte-deterministic for a fixed (scenario, params, trials,
// seed); wall-clock timing is printed to the log only.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "oka/protocols.hpp"
#include "oka/reduction.hpp"
#include "oka/scenarios.hpp"

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("OKALAB_OUT");
  return env && *env ? env : ".";
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << body;
}

std::pair<std::string, double> parse_param(const std::string& kv) {
  auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw CLI::ValidationError("--param expects key=value, got: " + kv);
  return {kv.substr(0, eq), std::stod(kv.substr(eq + 1))};
}

int cmd_run(const std::string& config_path, const std::string& scenario,
            const std::vector<std::string>& params, int64_t trials,
            int64_t seed, size_t workers, const std::string& out_dir) {
  oka::ScenarioConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot read config " << config_path << "\n";
      return 2;
    }
    nlohmann::json j = nlohmann::json::parse(in);
    cfg.scenario = j.value("scenario", std::string{});
    cfg.trials = j.value("trials", size_t{0});
    cfg.master_seed = j.value("master_seed", uint64_t{1});
    if (j.contains("params"))
      for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
        cfg.params[it.key()] = it.value().get<double>();
  }
  // Flags override file values.
  if (!scenario.empty()) cfg.scenario = scenario;
  if (trials >= 0) cfg.trials = size_t(trials);
  if (seed >= 0) cfg.master_seed = uint64_t(seed);
  cfg.workers = workers;
  for (const auto& kv : params) cfg.params.insert_or_assign(
      parse_param(kv).first, parse_param(kv).second);

  if (cfg.scenario.empty()) {
    std::cerr << "error: no scenario given (--scenario or --config)\n";
    return 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  oka::ScenarioResult res;
  try {
    res = oka::run_scenario(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0).count();

  std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  write_file(dir / (cfg.scenario + ".csv"), res.csv);
  write_file(dir / (cfg.scenario + ".json"),
             res.summary_with_assertions().dump(2) + "\n");

  for (const auto& a : res.assertions)
    std::cout << (a.pass ? "PASS " : "FAIL ") << a.name
              << "  value=" << a.value << "  bound=" << a.bound << "\n";
  std::cout << cfg.scenario << ": " << (res.pass ? "PASS" : "FAIL") << " ("
            << secs << " s, artifacts in " << dir.string() << ")\n";
  return res.pass ? 0 : 1;
}

int cmd_list() {
  for (const auto& [name, desc] : oka::scenario_catalog())
    std::cout << name << "\n    " << desc << "\n";
  return 0;
}

int cmd_calibrate(size_t ell, uint64_t universe, size_t trials,
                  const std::vector<int>& sizes, uint64_t seed,
                  const std::string& out_path) {
  try {
    oka::ProtocolSpec ka = oka::merkle_puzzles(ell, universe);
    oka::AccProfile prof =
        oka::calibrate_acc_profile(ka, ell, trials, sizes, seed);
    write_file(out_path, prof.to_json().dump(2) + "\n");
    std::cout << "profile written to " << out_path << " (c=" << prof.chosen_c
              << ", d=" << prof.chosen_d << ", gap=" << prof.gap << ")\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"okalab: oracle key-agreement simulation laboratory"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Execute a scenario");
  std::string config_path, scenario, out_dir = default_out_dir();
  std::vector<std::string> params;
  int64_t trials = -1, seed = -1;
  size_t workers = 1;
  run->add_option("--config", config_path, "JSON experiment config");
  run->add_option("--scenario", scenario, "Scenario name (see `list`)");
  run->add_option("--param", params, "Override a scenario parameter, key=value");
  run->add_option("--trials", trials, "Override the trial count");
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--workers", workers, "Worker threads");
  run->add_option("--out", out_dir,
                  "Output directory (default: $OKALAB_OUT or .)");

  // list
  auto* list = app.add_subcommand("list", "List scenarios");

  // calibrate
  auto* cal = app.add_subcommand(
      "calibrate", "Calibrate and persist a set-solver accuracy profile");
  size_t cal_ell = 32, cal_trials = 10000;
  uint64_t cal_universe = 128, cal_seed = 1;
  std::vector<int> cal_sizes = {0, 1};
  std::string cal_out = "profile.json";
  cal->add_option("--ell", cal_ell, "Per-party query budget");
  cal->add_option("--universe", cal_universe, "Query universe size");
  cal->add_option("--trials", cal_trials, "Trials per intersection size");
  cal->add_option("--sizes", cal_sizes, "Intersection sizes to profile");
  cal->add_option("--seed", cal_seed, "Calibration seed");
  cal->add_option("--out", cal_out, "Profile output path");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed())
    return cmd_run(config_path, scenario, params, trials, seed, workers,
                   out_dir);
  if (list->parsed()) return cmd_list();
  if (cal->parsed())
    return cmd_calibrate(cal_ell, cal_universe, cal_trials, cal_sizes,
                         cal_seed, cal_out);
  return 2;
}
