#include "oka/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include "oka/eavesdrop.hpp"
#include "oka/infotheory.hpp"
#include "oka/protocols.hpp"
#include "oka/reduction.hpp"
#include "oka/stats.hpp"
#include "oka/transforms.hpp"

namespace oka {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// Versioned CSV contract: one metric sample per row, `x` is the sweep
// coordinate (0 when the metric is scalar), `extra` a free-form annotation.
struct CsvBuilder {
  std::string scenario;
  std::string body = "# okalab-csv v1\nscenario,metric,x,value,extra\n";

  void row(const std::string& metric, double x, double value,
           const std::string& extra = "") {
    body += scenario + "," + metric + "," + fmt(x) + "," + fmt(value) + "," +
            extra + "\n";
  }
};

double param(const ScenarioConfig& cfg, const std::string& name, double dflt) {
  auto it = cfg.params.find(name);
  return it == cfg.params.end() ? dflt : it->second;
}

struct Recorder {
  std::vector<ScenarioAssertion>& out;

  void record(const std::string& name, bool pass, double value, double bound) {
    out.push_back({name, pass, value, bound});
  }
  void leq(const std::string& name, double value, double bound) {
    record(name, value <= bound, value, bound);
  }
  void geq(const std::string& name, double value, double bound) {
    record(name, value >= bound, value, bound);
  }
  void abs_leq(const std::string& name, double value, double bound) {
    record(name, std::abs(value) <= bound, value, bound);
  }
};

nlohmann::json attack_json(const AttackStats& st) {
  return {{"success", st.success},       {"ci", st.ci_halfwidth},
          {"mean_queries", st.mean_queries}, {"trials", st.trials},
          {"insufficient", st.insufficient}, {"truncated", st.truncated}};
}

Attacker make_eve(EveConfig cfg, std::shared_ptr<std::vector<Point>> e0) {
  return [cfg, e0](const ProtocolSpec& spec, const ExecutionRecord& rec,
                   Oracle& o, uint64_t seed) {
    return heavy_query_eve_attack(spec, cfg, rec, o, seed, e0.get());
  };
}

// ---------------------------------------------------------------------------
// merkle-gap: the success-vs-budget curve of a brute-force table learner
// against the puzzle exchange, next to the query-free heavy-set attacker.
void scenario_merkle_gap(const ScenarioConfig& config, ScenarioResult& res,
                         CsvBuilder& csv, Recorder& rec) {
  size_t trials = config.trials ? config.trials : 2000;
  size_t ell = size_t(param(config, "ell", 16));
  uint64_t universe = uint64_t(param(config, "universe", 256));
  ProtocolSpec spec = merkle_puzzles(ell, universe);
  uint64_t dsize = uint64_t{1} << spec.domain_bits;

  Rng master(config.master_seed);
  uint64_t eval_seed = master.substream(1).seed();
  uint64_t e0_seed = master.substream(3).seed();

  AgreementEstimate agree = estimate_agreement(spec, trials, eval_seed);
  csv.row("agreement", 0, agree.estimate, "ci=" + fmt(agree.ci_halfwidth));

  EveConfig cfg;
  cfg.delta = default_delta(ell, ell * ell);
  cfg.mc_samples = size_t(param(config, "census", 1000));
  auto e0 = std::make_shared<std::vector<Point>>(
      compute_heavy_set_0(spec, cfg, e0_seed));

  std::set<uint64_t> budgets{0, ell, ell * ell, dsize};
  AttackStats bf_full;
  nlohmann::json curve = nlohmann::json::array();
  for (uint64_t b : budgets) {
    Attacker at = [cfg, b](const ProtocolSpec& s, const ExecutionRecord& r,
                           Oracle& o, uint64_t seed) {
      return brute_force_attack(s, cfg, r, o, size_t(b), seed);
    };
    AttackStats st = evaluate_attacker(spec, at, trials, eval_seed,
                                       config.workers);
    if (b == dsize) bf_full = st;
    csv.row("bruteforce_success", double(b), st.success,
            "ci=" + fmt(st.ci_halfwidth));
    csv.row("bruteforce_mean_queries", double(b), st.mean_queries);
    nlohmann::json pt = attack_json(st);
    pt["budget"] = b;
    curve.push_back(pt);
  }

  AttackStats eve = evaluate_attacker(spec, make_eve(cfg, e0), trials,
                                      eval_seed, config.workers);
  csv.row("eve_success", 0, eve.success, "ci=" + fmt(eve.ci_halfwidth));
  csv.row("eve_mean_queries", 0, eve.mean_queries);

  rec.geq("agreement_min", agree.estimate, 0.55);
  rec.abs_leq("bruteforce_full_matches_agreement",
              bf_full.success - agree.estimate, 0.05);
  rec.leq("eve_zero_queries", eve.mean_queries, 0.0);
  rec.leq("eve_success_max", eve.success, 0.1);
  rec.geq("gap_bruteforce_minus_eve", bf_full.success - eve.success, 0.3);

  res.summary["params"] = {{"ell", ell}, {"universe", universe},
                           {"delta", cfg.delta}, {"census", cfg.mc_samples}};
  res.summary["seeds"] = {{"eval", eval_seed}, {"heavy_census", e0_seed}};
  res.summary["agreement"] = {{"estimate", agree.estimate},
                              {"ci", agree.ci_halfwidth}};
  res.summary["bruteforce_curve"] = curve;
  res.summary["eve"] = attack_json(eve);
  res.summary["e0_size"] = e0->size();
}

// ---------------------------------------------------------------------------
// eve-attack: the heavy-set attacker reaches the honest agreement rate on the
// row/column protocol, and still does after the heavy-point elimination and
// key-relocation transforms are applied to the masked variant.
void scenario_eve_attack(const ScenarioConfig& config, ScenarioResult& res,
                         CsvBuilder& csv, Recorder& rec) {
  size_t trials = config.trials ? config.trials : 2000;
  size_t ell = size_t(param(config, "ell", 16));
  size_t census = size_t(param(config, "census", 100000));

  Rng master(config.master_seed);
  EveConfig cfg;
  cfg.delta = default_delta(ell, ell * ell);
  cfg.mc_samples = census;

  auto run_part = [&](const ProtocolSpec& spec, const std::string& label,
                      uint64_t tag) {
    Rng sub = master.substream(tag);
    uint64_t eval_seed = sub.substream(0).seed();
    uint64_t e0_seed = sub.substream(1).seed();
    AgreementEstimate agree = estimate_agreement(spec, trials, eval_seed);
    auto e0 = std::make_shared<std::vector<Point>>(
        compute_heavy_set_0(spec, cfg, e0_seed));
    AttackStats eve = evaluate_attacker(spec, make_eve(cfg, e0), trials,
                                        eval_seed, config.workers);
    csv.row(label + "_agreement", 0, agree.estimate,
            "ci=" + fmt(agree.ci_halfwidth));
    csv.row(label + "_eve_success", 0, eve.success,
            "ci=" + fmt(eve.ci_halfwidth));
    csv.row(label + "_eve_mean_queries", 0, eve.mean_queries);
    rec.abs_leq(label + "_eve_matches_agreement",
                eve.success - agree.estimate, 0.05);
    res.summary[label] = {{"protocol", spec.name},
                          {"agreement", agree.estimate},
                          {"agreement_ci", agree.ci_halfwidth},
                          {"eve", attack_json(eve)},
                          {"e0_size", e0->size()},
                          {"seeds", {{"eval", eval_seed}, {"e0", e0_seed}}}};
  };

  run_part(matrix_rowcol(ell), "plain", 1);

  uint64_t transform_seed = master.substream(5).seed();
  HeavyElimination he =
      eliminate_apriori_heavy(xor_masked_rowcol(ell), cfg.delta, census,
                              transform_seed);
  ProtocolSpec transformed = key_as_last_query(he.spec);
  run_part(transformed, "transformed", 2);
  res.summary["transform"] = {{"seed", transform_seed},
                              {"eliminated_points", he.e0.size()}};
  res.summary["params"] = {{"ell", ell}, {"delta", cfg.delta},
                           {"census", census}};
}

// ---------------------------------------------------------------------------
// counterexample: on the adaptive chain protocol no fixed point is heavy, so
// the heavy-set attacker asks nothing and is stuck near 2/ell, while simply
// resampling B against the true oracle matches the honest agreement rate.
void scenario_counterexample(const ScenarioConfig& config, ScenarioResult& res,
                             CsvBuilder& csv, Recorder& rec) {
  size_t trials = config.trials ? config.trials : 1000;
  int n = int(param(config, "n", 8));
  size_t ell = size_t{1} << (n / 2);
  ProtocolSpec spec = hash_chain_adaptive(n);

  Rng master(config.master_seed);
  uint64_t eval_seed = master.substream(1).seed();
  uint64_t e0_seed = master.substream(2).seed();

  EveConfig cfg;
  cfg.delta = 0.25;
  cfg.mc_samples = size_t(param(config, "census", 100000));

  AgreementEstimate agree = estimate_agreement(spec, trials, eval_seed);
  auto e0 = std::make_shared<std::vector<Point>>(
      compute_heavy_set_0(spec, cfg, e0_seed));
  AttackStats eve = evaluate_attacker(spec, make_eve(cfg, e0), trials,
                                      eval_seed, config.workers);
  Attacker baseline = [](const ProtocolSpec& s, const ExecutionRecord& r,
                         Oracle& o, uint64_t seed) {
    return resample_b_attack(s, r, o, seed);
  };
  AttackStats sim = evaluate_attacker(spec, baseline, trials, eval_seed,
                                      config.workers);

  csv.row("agreement", 0, agree.estimate, "ci=" + fmt(agree.ci_halfwidth));
  csv.row("eve_success", 0, eve.success, "ci=" + fmt(eve.ci_halfwidth));
  csv.row("eve_mean_queries", 0, eve.mean_queries);
  csv.row("simulate_b_success", 0, sim.success, "ci=" + fmt(sim.ci_halfwidth));

  double eve_bound = 2.0 / double(ell) + 3.0 * hoeffding_ci(trials);
  rec.leq("eve_zero_queries", eve.mean_queries, 0.0);
  rec.leq("eve_success_max", eve.success, eve_bound);
  rec.abs_leq("simulate_b_matches_agreement", sim.success - agree.estimate,
              0.05);

  res.summary["params"] = {{"n", n}, {"ell", ell}, {"delta", cfg.delta},
                           {"census", cfg.mc_samples}};
  res.summary["seeds"] = {{"eval", eval_seed}, {"heavy_census", e0_seed}};
  res.summary["agreement"] = {{"estimate", agree.estimate},
                              {"ci", agree.ci_halfwidth}};
  res.summary["eve"] = attack_json(eve);
  res.summary["simulate_b"] = attack_json(sim);
  res.summary["e0_size"] = e0->size();
}

// ---------------------------------------------------------------------------
// disjointness: calibrate the accuracy profile of the two oracle-free
// emulations of the puzzle exchange, then decide random hard instances by
// majority vote over shared-randomness reruns.
void scenario_disjointness(const ScenarioConfig& config, ScenarioResult& res,
                           CsvBuilder& csv, Recorder& rec) {
  size_t instances = config.trials ? config.trials : 200;
  size_t ell = size_t(param(config, "ell", 32));
  uint64_t universe = uint64_t(param(config, "universe", 128));
  size_t cal_trials = size_t(param(config, "calibration_trials", 10000));
  double epsilon = param(config, "epsilon", 0.1);
  ProtocolSpec ka = merkle_puzzles(ell, universe);

  Rng master(config.master_seed);
  uint64_t cal_seed = master.substream(1).seed();
  AccProfile profile =
      calibrate_acc_profile(ka, ell, cal_trials, {0, 1}, cal_seed);
  for (const auto& [i, s] : profile.suc) {
    csv.row("acc_com", double(i), profile.acc_com.at(i).estimate,
            "ci=" + fmt(profile.acc_com.at(i).ci));
    csv.row("acc_dist", double(i), profile.acc_dist.at(i).estimate,
            "ci=" + fmt(profile.acc_dist.at(i).ci));
    csv.row("suc", double(i), s);
  }

  double comb_ci = profile.acc_com.at(0).ci + profile.acc_dist.at(0).ci;
  SetSolverConfig solver = SetSolverConfig::from_profile(profile, epsilon);

  size_t errors = 0;
  double comm = 0;
  Rng inst_stream = master.substream(2);
  Rng solve_stream = master.substream(3);
  for (size_t j = 0; j < instances; ++j) {
    DisjointnessInstance inst =
        sample_hard_instance(ell, inst_stream.substream(j).seed());
    SolveResult sr = solve_disjointness(inst, ka, profile, solver,
                                        solve_stream.substream(j).seed());
    bool truth_disjoint = inst.label == DisjointnessLabel::Disjoint;
    if (sr.disjoint != truth_disjoint) ++errors;
    comm += double(sr.communication_bits);
  }
  double err_rate = double(errors) / double(instances);
  csv.row("solver_error_rate", 0, err_rate,
          "instances=" + std::to_string(instances));
  csv.row("solver_repetitions", 0, double(solver.k));
  csv.row("solver_mean_communication_bits", 0, comm / double(instances));

  rec.abs_leq("suc0_near_zero", profile.suc.at(0), 2 * comb_ci);
  rec.geq("suc1_min", profile.suc.at(1), 0.5);
  rec.leq("solver_error_max", err_rate, epsilon + 0.05);

  res.summary["params"] = {{"ell", ell}, {"universe", universe},
                           {"calibration_trials", cal_trials},
                           {"epsilon", epsilon}, {"instances", instances}};
  res.summary["seeds"] = {{"calibration", cal_seed}};
  res.summary["profile"] = profile.to_json();
  res.summary["solver"] = {{"k", solver.k}, {"threshold", solver.threshold},
                           {"c", solver.c}};
  res.summary["error_rate"] = err_rate;
  res.summary["mean_communication_bits"] = comm / double(instances);
}

// ---------------------------------------------------------------------------
// lemma-check: exact certification of the information-theoretic inequality
// battery and of the hybrid decoupling bound on random and corner joints.
void scenario_lemma_check(const ScenarioConfig& config, ScenarioResult& res,
                          CsvBuilder& csv, Recorder& rec) {
  size_t batch = size_t(param(config, "batch", 200));
  size_t hybrid_batch = size_t(param(config, "hybrid_batch", 100));
  size_t max_alphabet = size_t(param(config, "max_alphabet", 4));
  double tol = param(config, "tol", 1e-9);

  Rng master(config.master_seed);
  uint64_t ineq_seed = master.substream(1).seed();
  uint64_t hybrid_seed = master.substream(2).seed();
  InequalityReport ineq =
      check_inequalities(batch, max_alphabet, ineq_seed, tol);
  InequalityReport hybrid = check_hybrid_lemma(hybrid_batch, hybrid_seed, tol);

  for (const auto& item : ineq.items)
    csv.row("inequality_max_violation", double(item.instances),
            item.max_violation, item.name);
  for (const auto& item : hybrid.items)
    csv.row("hybrid_max_violation", double(item.instances), item.max_violation,
            item.name);

  rec.leq("inequalities_max_violation", ineq.max_violation, tol);
  rec.leq("hybrid_max_violation", hybrid.max_violation, tol);

  res.summary["params"] = {{"batch", batch}, {"hybrid_batch", hybrid_batch},
                           {"max_alphabet", max_alphabet}, {"tol", tol}};
  res.summary["seeds"] = {{"inequalities", ineq_seed},
                          {"hybrid", hybrid_seed}};
  res.summary["inequalities"] = ineq.to_json();
  res.summary["hybrid"] = hybrid.to_json();
}

// ---------------------------------------------------------------------------
// transform-check: the key-relocation transform preserves agreement run by
// run, its appended bit is independent of the rest of the transcript, and the
// heavy-point elimination empirically removes all heavy points.
void scenario_transform_check(const ScenarioConfig& config,
                              ScenarioResult& res, CsvBuilder& csv,
                              Recorder& rec) {
  size_t trials = config.trials ? config.trials : 10000;
  size_t ell = size_t(param(config, "ell", 16));
  double delta = param(config, "delta", 0.25);

  ProtocolSpec base = matrix_rowcol(ell);
  ProtocolSpec keylast = key_as_last_query(base);

  Rng master(config.master_seed);
  Rng couple_stream = master.substream(1);
  size_t mismatches = 0;
  // 16 hash buckets of the transcript-minus-last-bit vs the appended bit.
  std::vector<std::vector<size_t>> table(16, std::vector<size_t>(2, 0));
  for (size_t t = 0; t < trials; ++t) {
    Rng sub = couple_stream.substream(t);
    uint64_t oseed = sub.substream(0).seed();
    uint64_t rseed = sub.substream(1).seed();
    ExecutionRecord rb = execute_fresh(base, oseed, rseed);
    ExecutionRecord rt = execute_fresh(keylast, oseed, rseed);
    if (agreement(rb) != agreement(rt)) ++mismatches;
    const Message& m2 = rt.transcript.at(1);
    uint8_t bit = m2.bits.back() & 1;
    Message head{{m2.bits.begin(), m2.bits.end() - 1}};
    uint64_t packed = rt.transcript.at(0).to_uint() |
                      (head.to_uint() << rt.transcript.at(0).length());
    table[mix64(packed) & 15][bit]++;
  }
  double chi_p = chi_square_independence(table);
  csv.row("keylast_agreement_mismatches", 0, double(mismatches),
          "coupled_runs=" + std::to_string(trials));
  csv.row("keylast_bit_independence_p", 0, chi_p);

  uint64_t elim_seed = master.substream(2).seed();
  HeavyElimination he =
      eliminate_apriori_heavy(xor_masked_rowcol(ell), delta, trials,
                              elim_seed);
  Rng census_stream = master.substream(3);
  std::unordered_map<Point, size_t> presence;
  for (size_t t = 0; t < trials; ++t) {
    Rng sub = census_stream.substream(t);
    ExecutionRecord r = execute_fresh(he.spec, sub.substream(0).seed(),
                                      sub.substream(1).seed());
    std::set<Point> u(r.x_queries.begin(), r.x_queries.end());
    u.insert(r.y_queries.begin(), r.y_queries.end());
    for (Point p : u) ++presence[p];
  }
  double max_heaviness = 0;
  for (const auto& [p, c] : presence)
    max_heaviness = std::max(max_heaviness, double(c) / double(trials));
  csv.row("noheavy_max_point_heaviness", 0, max_heaviness,
          "eliminated=" + std::to_string(he.e0.size()));

  rec.leq("keylast_agreement_mismatches", double(mismatches), 0.0);
  rec.geq("keylast_bit_independence_p", chi_p, 0.01);
  rec.leq("noheavy_max_heaviness", max_heaviness,
          delta - 1e-12);  // strict "< delta"

  res.summary["params"] = {{"ell", ell}, {"delta", delta},
                           {"trials", trials}};
  res.summary["seeds"] = {{"elimination", elim_seed}};
  res.summary["mismatches"] = mismatches;
  res.summary["bit_independence_p"] = chi_p;
  res.summary["eliminated_points"] = he.e0.size();
  res.summary["max_heaviness"] = max_heaviness;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& scenario_catalog() {
  static const std::vector<std::pair<std::string, std::string>> catalog = {
      {"merkle-gap",
       "Puzzle-exchange key agreement: brute-force success vs query budget "
       "against the query-free heavy-set eavesdropper"},
      {"eve-attack",
       "Heavy-set eavesdropper matches honest agreement on the row/column "
       "protocol, before and after the two protocol transforms"},
      {"counterexample",
       "Adaptive chain protocol where no fixed point is heavy: the heavy-set "
       "eavesdropper stalls while resampling B tracks agreement"},
      {"disjointness",
       "Set-disjointness decided via the shared- vs private-randomness "
       "emulation gap of a uniform-query key-agreement protocol"},
      {"lemma-check",
       "Exact certification of the information-theoretic inequality battery "
       "and the hybrid decoupling bound"},
      {"transform-check",
       "Contracts of the key-relocation and heavy-point-elimination "
       "transforms: coupled agreement, bit independence, empirical "
       "heaviness"},
  };
  return catalog;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  ScenarioResult res;
  res.scenario = config.scenario;
  res.summary["scenario"] = config.scenario;
  res.summary["master_seed"] = config.master_seed;

  CsvBuilder csv;
  csv.scenario = config.scenario;
  Recorder rec{res.assertions};

  if (config.scenario == "merkle-gap")
    scenario_merkle_gap(config, res, csv, rec);
  else if (config.scenario == "eve-attack")
    scenario_eve_attack(config, res, csv, rec);
  else if (config.scenario == "counterexample")
    scenario_counterexample(config, res, csv, rec);
  else if (config.scenario == "disjointness")
    scenario_disjointness(config, res, csv, rec);
  else if (config.scenario == "lemma-check")
    scenario_lemma_check(config, res, csv, rec);
  else if (config.scenario == "transform-check")
    scenario_transform_check(config, res, csv, rec);
  else
    throw parameter_error("unknown scenario: " + config.scenario);

  res.pass = true;
  for (const auto& a : res.assertions) res.pass = res.pass && a.pass;
  res.csv = csv.body;
  return res;
}

nlohmann::json ScenarioResult::summary_with_assertions() const {
  nlohmann::json j = summary;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : assertions)
    arr.push_back({{"name", a.name}, {"pass", a.pass}, {"value", a.value},
                   {"bound", a.bound}});
  j["assertions"] = arr;
  j["pass"] = pass;
  return j;
}

}  // namespace oka
