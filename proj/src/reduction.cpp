#include "oka/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "json.hpp"

#include "oka/protocols.hpp"

namespace oka {

namespace {

uint64_t universe_of(const ProtocolSpec& ka) {
  auto it = ka.params.find("universe");
  if (it != ka.params.end()) return uint64_t(it->second);
  return uint64_t{1} << ka.domain_bits;
}

// Uniform k-subset of {0,...,universe-1} avoiding `taken`.
std::vector<Point> subset_avoiding(Rng& rng, size_t k, uint64_t universe,
                                   const std::vector<Point>& taken) {
  std::unordered_set<Point> bad(taken.begin(), taken.end());
  std::vector<Point> pool;
  pool.reserve(universe - bad.size());
  for (uint64_t v = 0; v < universe; ++v)
    if (!bad.count(Point(v))) pool.push_back(Point(v));
  for (size_t i = 0; i < k; ++i)
    std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  pool.resize(k);
  return pool;
}

void check_lambda_inputs(const ProtocolSpec& ka, const std::vector<Point>& x,
                         const std::vector<Point>& y) {
  if (x.size() != size_t(ka.query_budget_a) ||
      y.size() != size_t(ka.query_budget_b))
    throw parameter_error("lambda emulation: forced set size mismatch");
}

}  // namespace

DisjointnessInstance sample_hard_instance(size_t ell, uint64_t rng_seed) {
  if (ell < 8) throw parameter_error("sample_hard_instance: ell >= 8");
  size_t m = ell / 4;
  Rng rng(rng_seed);
  DisjointnessInstance inst;
  inst.label = rng.coin(0.25) ? DisjointnessLabel::IntersectOne
                              : DisjointnessLabel::Disjoint;
  inst.x = uniform_subset(rng, m, ell);
  if (inst.label == DisjointnessLabel::Disjoint) {
    inst.y = subset_avoiding(rng, m, ell, inst.x);
  } else {
    Point shared = inst.x[rng.below(m)];
    inst.y = subset_avoiding(rng, m - 1, ell, inst.x);
    inst.y.push_back(shared);
  }
  return inst;
}

ExecutionRecord run_lambda_com(const ProtocolSpec& ka,
                               const std::vector<Point>& x,
                               const std::vector<Point>& y,
                               uint64_t shared_seed, uint64_t rng_seed) {
  check_lambda_inputs(ka, x, y);
  Oracle o(shared_seed, ka.domain_bits, ka.range_bits);
  return execute(ka, o, o, rng_seed, ForcedQueries(x), ForcedQueries(y));
}

ExecutionRecord run_lambda_dist(const ProtocolSpec& ka,
                                const std::vector<Point>& x,
                                const std::vector<Point>& y, uint64_t seed_a,
                                uint64_t seed_b, uint64_t rng_seed) {
  check_lambda_inputs(ka, x, y);
  Oracle oa(seed_a, ka.domain_bits, ka.range_bits);
  Oracle ob(seed_b, ka.domain_bits, ka.range_bits);
  return execute(ka, oa, ob, rng_seed, ForcedQueries(x), ForcedQueries(y));
}

AccProfile calibrate_acc_profile(const ProtocolSpec& ka, size_t ell,
                                 size_t trials_per_size,
                                 const std::vector<int>& sizes,
                                 uint64_t rng_seed) {
  if (trials_per_size == 0)
    throw parameter_error("calibrate: trials_per_size >= 1");
  uint64_t universe = universe_of(ka);
  if (ell != size_t(ka.query_budget_a))
    throw parameter_error("calibrate: ell must equal the protocol budget");

  AccProfile prof;
  prof.seed = rng_seed;
  prof.trials_per_size = trials_per_size;
  Rng master(rng_seed);
  double ci = hoeffding_ci(trials_per_size);

  for (int i : sizes) {
    if (i < 0 || size_t(i) > ell)
      throw parameter_error("calibrate: size outside [0, ell]");
    size_t hits_com = 0, hits_dist = 0;
    for (size_t t = 0; t < trials_per_size; ++t) {
      Rng sub = master.substream((uint64_t(uint32_t(i)) << 32) | t);
      Rng draws = sub.substream(0);
      // X uniform; Y shares exactly the first i elements of X's draw order.
      std::vector<Point> x = uniform_subset(draws, ell, universe);
      std::vector<Point> y(x.begin(), x.begin() + i);
      std::vector<Point> rest =
          subset_avoiding(draws, ell - size_t(i), universe, x);
      y.insert(y.end(), rest.begin(), rest.end());

      uint64_t rng_run = sub.substream(1).seed();
      ExecutionRecord com = run_lambda_com(ka, x, y, sub.substream(2).seed(),
                                           rng_run);
      ExecutionRecord dist =
          run_lambda_dist(ka, x, y, sub.substream(3).seed(),
                          sub.substream(4).seed(), rng_run);
      if (agreement(com)) ++hits_com;
      if (agreement(dist)) ++hits_dist;
    }
    double ac = double(hits_com) / double(trials_per_size);
    double ad = double(hits_dist) / double(trials_per_size);
    prof.acc_com[i] = {ac, ci};
    prof.acc_dist[i] = {ad, ci};
    prof.suc[i] = ac - ad;
  }

  double comb_ci = 2 * ci;
  double best = 0;
  for (const auto& [i, s] : prof.suc) best = std::max(best, std::abs(s));
  if (best <= 3 * comb_ci)
    throw no_gap_error("calibrate: no intersection size separates the "
                       "emulations beyond statistical error");

  prof.chosen_d = -1;
  for (const auto& [i, s] : prof.suc)
    if (std::abs(s) >= best / 2 && std::abs(s) > 3 * comb_ci) {
      prof.chosen_d = i;
      break;
    }
  // Largest jump of the Suc curve among sizes up to d picks the decision
  // size c; requires i-1 to be profiled too.
  double jump = -1;
  for (const auto& [i, s] : prof.suc) {
    if (i < 1 || i > prof.chosen_d) continue;
    auto prev = prof.suc.find(i - 1);
    if (prev == prof.suc.end()) continue;
    double j = std::abs(s - prev->second);
    if (j > jump) {
      jump = j;
      prof.chosen_c = i;
    }
  }
  if (jump < 0)
    throw no_gap_error("calibrate: no adjacent size pair available for c");
  prof.gap = prof.acc_com[prof.chosen_c].estimate -
             prof.acc_com[prof.chosen_c - 1].estimate;
  prof.high_counter_means_intersect = prof.gap > 0;
  return prof;
}

SetSolverConfig SetSolverConfig::from_profile(const AccProfile& profile,
                                              double epsilon) {
  SetSolverConfig cfg;
  cfg.c = profile.chosen_c;
  cfg.epsilon = epsilon;
  double a1 = profile.acc_com.at(cfg.c).estimate;
  double a0 = profile.acc_com.at(cfg.c - 1).estimate;
  cfg.threshold = (a1 + a0) / 2;
  cfg.k = required_repetitions(epsilon, std::abs(profile.gap) / 2);
  return cfg;
}

std::pair<ProtocolSpec, ProtocolSpec> build_secrecy_gap_wrapper(
    const ProtocolSpec& ka, const TranscriptAttacker& attacker) {
  if (ka.key_bits != 1)
    throw spec_error("secrecy-gap wrapper needs a single-bit key");
  size_t ell = size_t(ka.query_budget_a);
  uint64_t universe = universe_of(ka);

  auto make = [&](bool private_oracles) {
    ProtocolSpec s = ka;
    s.name = ka.name + (private_oracles ? "+gapwrap_dist" : "+gapwrap_com");
    s.uses_shared_oracle = !private_oracles;
    s.run_a = [inner = ka.run_a, ell, universe, private_oracles,
               db = ka.domain_bits, rb = ka.range_bits](
                  OracleView& view, Rng& rng, const ForcedQueries&) {
      std::vector<Point> x = uniform_subset(rng, ell, universe);
      if (!private_oracles) return inner(view, rng, ForcedQueries(x));
      Oracle priv(rng.u64(), db, rb);
      ChargingView pv(priv, Principal::A);
      return inner(pv, rng, ForcedQueries(x));
    };
    s.run_b = [inner = ka.run_b, attacker, ell, universe, private_oracles,
               db = ka.domain_bits, rb = ka.range_bits](
                  OracleView& view, Rng& rng, const Message& m1,
                  const ForcedQueries&) {
      std::vector<Point> y = uniform_subset(rng, ell, universe);
      BSide b;
      if (!private_oracles) {
        b = inner(view, rng, m1, ForcedQueries(y));
      } else {
        Oracle priv(rng.u64(), db, rb);
        ChargingView pv(priv, Principal::B);
        b = inner(pv, rng, m1, ForcedQueries(y));
      }
      std::optional<Key> guess = attacker({m1, b.m2}, rng);
      b.out = Key((guess.value_or(0) ^ 1) & 1);
      return b;
    };
    s.invert_m1 = nullptr;
    return s;
  };
  return {make(false), make(true)};
}

std::pair<std::vector<Point>, std::vector<Point>> pad_inputs(
    const std::vector<Point>& x, const std::vector<Point>& y, size_t ell,
    int c) {
  size_t m = ell / 4;
  if (x.size() != m || y.size() != m)
    throw parameter_error("pad_inputs: inputs must have size ell/4");
  if (c < 1 || size_t(c) > 3 * ell / 4)
    throw parameter_error("pad_inputs: c outside [1, 3*ell/4]");
  size_t filler = ell - m - size_t(c - 1);

  std::vector<Point> px = x, py = y;
  for (int i = 0; i < c - 1; ++i) {
    px.push_back(Point(ell + size_t(i)));
    py.push_back(Point(ell + size_t(i)));
  }
  for (size_t i = 0; i < filler; ++i) {
    px.push_back(Point(2 * ell + i));
    py.push_back(Point(3 * ell + i));
  }
  return {px, py};
}

size_t required_repetitions(double epsilon, double half_gap) {
  if (epsilon <= 0 || epsilon >= 1)
    throw parameter_error("required_repetitions: epsilon in (0,1)");
  if (half_gap <= 0)
    throw parameter_error("required_repetitions: half_gap > 0");
  double k = std::log(1.0 / epsilon) / (2.0 * half_gap * half_gap);
  return size_t(std::max(1.0, std::ceil(k)));
}

SolveResult solve_disjointness(const DisjointnessInstance& instance,
                               const ProtocolSpec& ka,
                               const AccProfile& profile,
                               const SetSolverConfig& cfg, uint64_t rng_seed) {
  size_t ell = size_t(ka.query_budget_a);
  uint64_t universe = universe_of(ka);
  if (universe < 4 * ell)
    throw parameter_error("solve_disjointness: universe must cover [4*ell]");

  auto [px, py] = pad_inputs(instance.x, instance.y, ell, cfg.c);
  Rng master(rng_seed);
  SolveResult res;
  res.k = cfg.k;

  for (size_t j = 0; j < cfg.k; ++j) {
    Rng sub = master.substream(j);
    // Fresh uniform relabeling of the whole universe per repetition.
    Rng prng = sub.substream(0);
    std::vector<Point> perm(universe);
    for (uint64_t v = 0; v < universe; ++v) perm[v] = Point(v);
    for (size_t i = 0; i + 1 < perm.size(); ++i)
      std::swap(perm[i], perm[i + prng.below(perm.size() - i)]);
    std::vector<Point> sx, sy;
    for (Point p : px) sx.push_back(perm[p]);
    for (Point p : py) sy.push_back(perm[p]);

    ExecutionRecord rec = run_lambda_com(ka, sx, sy, sub.substream(1).seed(),
                                         sub.substream(2).seed());
    if (agreement(rec)) ++res.counter;
    res.communication_bits += communication_cost(rec) + 1;
  }
  res.communication_bits += 1;

  bool above = double(res.counter) / double(cfg.k) > cfg.threshold;
  bool intersect = (above == profile.high_counter_means_intersect);
  res.disjoint = !intersect;
  return res;
}

nlohmann::json AccProfile::to_json() const {
  nlohmann::json j;
  auto dump = [](const std::map<int, EstimateCi>& m) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [i, e] : m)
      out[std::to_string(i)] = {{"estimate", e.estimate}, {"ci", e.ci}};
    return out;
  };
  j["acc_com"] = dump(acc_com);
  j["acc_dist"] = dump(acc_dist);
  nlohmann::json s = nlohmann::json::object();
  for (const auto& [i, v] : suc) s[std::to_string(i)] = v;
  j["suc"] = s;
  j["chosen_c"] = chosen_c;
  j["chosen_d"] = chosen_d;
  j["gap"] = gap;
  j["high_counter_means_intersect"] = high_counter_means_intersect;
  j["seed"] = seed;
  j["trials_per_size"] = trials_per_size;
  return j;
}

AccProfile AccProfile::from_json(const nlohmann::json& j) {
  AccProfile p;
  auto load = [](const nlohmann::json& in, std::map<int, EstimateCi>& m) {
    for (auto it = in.begin(); it != in.end(); ++it)
      m[std::stoi(it.key())] = {it.value().at("estimate").get<double>(),
                                it.value().at("ci").get<double>()};
  };
  load(j.at("acc_com"), p.acc_com);
  load(j.at("acc_dist"), p.acc_dist);
  for (auto it = j.at("suc").begin(); it != j.at("suc").end(); ++it)
    p.suc[std::stoi(it.key())] = it.value().get<double>();
  p.chosen_c = j.at("chosen_c").get<int>();
  p.chosen_d = j.at("chosen_d").get<int>();
  p.gap = j.at("gap").get<double>();
  p.high_counter_means_intersect =
      j.at("high_counter_means_intersect").get<bool>();
  p.seed = j.at("seed").get<uint64_t>();
  p.trials_per_size = j.at("trials_per_size").get<size_t>();
  return p;
}

}  // namespace oka
