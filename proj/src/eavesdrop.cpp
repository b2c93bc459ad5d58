#include "oka/eavesdrop.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "oka/parallel.hpp"

namespace oka {

namespace {

// Per-draw presence counts: a point is counted once per draw in which it
// appears in either party's query list.
struct Census {
  std::unordered_map<Point, uint32_t> counts;

  void add(const std::vector<Point>& a, const std::vector<Point>& b) {
    std::unordered_set<Point> u(a.begin(), a.end());
    u.insert(b.begin(), b.end());
    for (Point p : u) ++counts[p];
  }

  std::vector<std::pair<Point, uint32_t>> heavy(double delta,
                                                size_t draws) const {
    std::vector<std::pair<Point, uint32_t>> out;
    for (const auto& [p, c] : counts)
      if (double(c) >= delta * double(draws)) out.emplace_back(p, c);
    std::sort(out.begin(), out.end());
    return out;
  }
};

using KnownMap = std::unordered_map<Point, Answer>;

KnownMap to_map(const std::vector<std::pair<Point, Answer>>& known) {
  return KnownMap(known.begin(), known.end());
}

bool conflicts(const OracleAssignment& fixes, const KnownMap& known) {
  for (const auto& [p, a] : fixes.fixes) {
    auto it = known.find(p);
    if (it != known.end() && it->second != a) return true;
  }
  return false;
}

Oracle scratch_oracle(const ProtocolSpec& spec, uint64_t seed,
                      const std::vector<std::pair<Point, Answer>>& known) {
  return Oracle(seed, spec.domain_bits, spec.range_bits).with_answers(known);
}

Message first_message(const ExecutionRecord& rec) {
  return rec.transcript.empty() ? Message{} : rec.transcript[0];
}

}  // namespace

double default_delta(size_t ell, size_t q) {
  if (ell < 1) throw parameter_error("default_delta: ell >= 1");
  if (q < 4 * ell) throw parameter_error("default_delta: q >= 4*ell required");
  return 4.0 * double(ell) / double(q);
}

std::vector<Point> compute_heavy_set_0(const ProtocolSpec& spec,
                                       const EveConfig& cfg, uint64_t seed) {
  if (!spec.sample_queries_a || !spec.sample_queries_b)
    throw spec_error("heavy-set census requires query samplers");
  if (cfg.mc_samples == 0)
    throw parameter_error("heavy-set census: mc_samples >= 1");
  Rng master(seed);
  Census census;
  for (size_t t = 0; t < cfg.mc_samples; ++t) {
    Rng sub = master.substream(t);
    Rng ra = sub.substream(0), rb = sub.substream(1);
    census.add(spec.sample_queries_a(ra), spec.sample_queries_b(rb));
  }
  std::vector<Point> e0;
  for (const auto& [p, c] : census.heavy(cfg.delta, cfg.mc_samples))
    e0.push_back(p);
  return e0;
}

HeavySets compute_heavy_set_1(
    const ProtocolSpec& spec, const EveConfig& cfg, const Message& m1,
    const std::vector<std::pair<Point, Answer>>& known, uint64_t seed) {
  if (spec.rounds < 1)
    throw spec_error("posterior heavy set undefined without a first message");
  if (!spec.sample_queries_a || !spec.sample_queries_b)
    throw spec_error("heavy-set census requires query samplers");
  KnownMap kmap = to_map(known);
  bool use_inverter = bool(spec.invert_m1);

  Rng master(seed);
  Census census;
  size_t accepted = 0;
  for (size_t t = 0; t < cfg.mc_samples; ++t) {
    Rng sub = master.substream(t);
    Rng rx = sub.substream(0), ri = sub.substream(1), rb = sub.substream(3);
    uint64_t oseed = sub.substream(2).seed();
    if (use_inverter) {
      std::vector<Point> xq = spec.sample_queries_a(rx);
      auto fixes = spec.invert_m1(xq, m1, ri);
      if (!fixes || conflicts(*fixes, kmap)) continue;
      ++accepted;
      Oracle o = scratch_oracle(spec, oseed, known).with_answers(fixes->fixes);
      ValueView vb(o);
      BSide bs = spec.run_b(vb, rb, m1, std::nullopt);
      census.add(xq, bs.queries);
    } else {
      Oracle o = scratch_oracle(spec, oseed, known);
      ValueView va(o), vb(o);
      ASide as = spec.run_a(va, rx, std::nullopt);
      if (as.m1 != m1) continue;
      ++accepted;
      BSide bs = spec.run_b(vb, rb, m1, std::nullopt);
      census.add(as.queries, bs.queries);
    }
  }
  if (accepted < cfg.min_accepted)
    throw insufficient_samples_error(
        "posterior census: too few draws consistent with m1");

  HeavySets hs;
  hs.accepted = accepted;
  for (const auto& [p, a] : known) hs.e0.push_back(p);
  std::sort(hs.e0.begin(), hs.e0.end());
  hs.e1 = hs.e0;
  std::unordered_set<Point> in_e1(hs.e1.begin(), hs.e1.end());
  // Add posterior-heavy extras, largest counts first, respecting the cap.
  auto extras = census.heavy(cfg.delta, accepted);
  std::sort(extras.begin(), extras.end(), [](const auto& l, const auto& r) {
    return l.second != r.second ? l.second > r.second : l.first < r.first;
  });
  for (const auto& [p, c] : extras) {
    if (in_e1.count(p)) continue;
    if (hs.e1.size() >= cfg.query_cap) {
      hs.truncated = true;
      break;
    }
    hs.e1.push_back(p);
    in_e1.insert(p);
  }
  return hs;
}

std::optional<Key> sample_b_output(
    const ProtocolSpec& spec, const EveConfig& cfg,
    const std::vector<Message>& transcript,
    const std::vector<std::pair<Point, Answer>>& known, uint64_t seed,
    bool* exhausted) {
  if (exhausted) *exhausted = false;
  Rng master(seed);

  if (spec.rounds == 0) {
    Rng sub = master.substream(0);
    Oracle o = scratch_oracle(spec, sub.substream(2).seed(), known);
    ValueView vb(o);
    Rng rb = sub.substream(3);
    return spec.run_b(vb, rb, Message{}, std::nullopt).out;
  }

  const Message& m1 = transcript.at(0);
  KnownMap kmap = to_map(known);
  bool use_inverter = bool(spec.invert_m1) && bool(spec.sample_queries_a);

  for (size_t t = 0; t < cfg.sample_draws; ++t) {
    Rng sub = master.substream(t);
    Rng rx = sub.substream(0), ri = sub.substream(1), rb = sub.substream(3);
    uint64_t oseed = sub.substream(2).seed();
    BSide bs;
    if (use_inverter) {
      std::vector<Point> xq = spec.sample_queries_a(rx);
      auto fixes = spec.invert_m1(xq, m1, ri);
      if (!fixes || conflicts(*fixes, kmap)) continue;
      Oracle o = scratch_oracle(spec, oseed, known).with_answers(fixes->fixes);
      ValueView vb(o);
      bs = spec.run_b(vb, rb, m1, std::nullopt);
    } else {
      Oracle o = scratch_oracle(spec, oseed, known);
      ValueView va(o), vb(o);
      ASide as = spec.run_a(va, rx, std::nullopt);
      if (as.m1 != m1) continue;
      bs = spec.run_b(vb, rb, m1, std::nullopt);
    }
    if (spec.rounds >= 2 && bs.m2 != transcript.at(1)) continue;
    return bs.out;
  }
  if (exhausted) *exhausted = true;
  return std::nullopt;
}

AttackOutcome heavy_query_eve_attack(const ProtocolSpec& spec,
                                     const EveConfig& cfg,
                                     const ExecutionRecord& rec, Oracle& oracle,
                                     uint64_t seed,
                                     const std::vector<Point>* precomputed_e0) {
  AttackOutcome out;
  Rng master(seed);
  size_t before = oracle.ledger(Principal::Eve).count();

  std::vector<Point> e0 = precomputed_e0
                              ? *precomputed_e0
                              : compute_heavy_set_0(spec, cfg,
                                                    master.substream(1).seed());
  if (e0.size() > cfg.query_cap) {
    e0.resize(cfg.query_cap);
    out.truncated = true;
  }
  std::vector<std::pair<Point, Answer>> known;
  for (Point p : e0) known.emplace_back(p, oracle.query(Principal::Eve, p));

  if (spec.rounds >= 1) {
    HeavySets hs;
    try {
      hs = compute_heavy_set_1(spec, cfg, first_message(rec), known,
                               master.substream(2).seed());
    } catch (const insufficient_samples_error&) {
      out.insufficient_samples = true;
      out.queries_spent = oracle.ledger(Principal::Eve).count() - before;
      return out;
    }
    out.truncated = out.truncated || hs.truncated;
    std::unordered_set<Point> have(e0.begin(), e0.end());
    for (Point p : hs.e1) {
      if (have.count(p)) continue;
      if (known.size() >= cfg.query_cap) {
        out.truncated = true;
        break;
      }
      known.emplace_back(p, oracle.query(Principal::Eve, p));
      have.insert(p);
    }
  }

  bool exhausted = false;
  out.guess = sample_b_output(spec, cfg, rec.transcript, known,
                              master.substream(3).seed(), &exhausted);
  if (exhausted) out.insufficient_samples = true;
  out.queries_spent = oracle.ledger(Principal::Eve).count() - before;
  return out;
}

AttackOutcome consistent_view_attack(const ProtocolSpec& spec,
                                     const ExecutionRecord& rec, size_t draws,
                                     uint64_t seed) {
  AttackOutcome out;
  Rng master(seed);
  Message m1 = first_message(rec);
  Message m2 = rec.transcript.size() >= 2 ? rec.transcript[1] : Message{};
  bool use_inverter = bool(spec.invert_m1) && bool(spec.sample_queries_a);

  for (size_t t = 0; t < draws; ++t) {
    Rng sub = master.substream(t);
    Rng rx = sub.substream(0), ri = sub.substream(1), ra = sub.substream(3);
    Oracle priv(sub.substream(2).seed(), spec.domain_bits, spec.range_bits);
    ASide as;
    if (use_inverter) {
      std::vector<Point> xq = spec.sample_queries_a(rx);
      auto fixes = spec.invert_m1(xq, m1, ri);
      if (!fixes) continue;
      Oracle o = priv.with_answers(fixes->fixes);
      ValueView va(o);
      as = spec.run_a(va, ra, ForcedQueries(xq));
      if (spec.rounds >= 1 && as.m1 != m1) continue;
    } else {
      ValueView va(priv);
      as = spec.run_a(va, ra, std::nullopt);
      if (spec.rounds >= 1 && as.m1 != m1) continue;
    }
    out.guess = as.finish ? as.finish(m2) : as.out;
    return out;
  }
  out.insufficient_samples = true;
  return out;
}

AttackOutcome brute_force_attack(const ProtocolSpec& spec, const EveConfig& cfg,
                                 const ExecutionRecord& rec, Oracle& oracle,
                                 size_t budget, uint64_t seed) {
  AttackOutcome out;
  Rng master(seed);
  size_t before = oracle.ledger(Principal::Eve).count();
  uint64_t domain = uint64_t{1} << spec.domain_bits;
  size_t n = size_t(std::min<uint64_t>({budget, domain, cfg.query_cap}));
  if (n < budget) out.truncated = true;

  std::vector<std::pair<Point, Answer>> known;
  known.reserve(n);
  for (size_t p = 0; p < n; ++p)
    known.emplace_back(Point(p), oracle.query(Principal::Eve, Point(p)));

  bool exhausted = false;
  if (n == domain && spec.rounds >= 1) {
    // Full knowledge of F: given the transcript, B's view depends only on its
    // own randomness, so resample B directly and condition on m2 alone.
    exhausted = true;
    for (size_t t = 0; t < cfg.sample_draws; ++t) {
      Rng sub = master.substream(t);
      Oracle o = scratch_oracle(spec, sub.substream(2).seed(), known);
      ValueView vb(o);
      Rng rb = sub.substream(3);
      BSide bs = spec.run_b(vb, rb, first_message(rec), std::nullopt);
      if (spec.rounds >= 2 && bs.m2 != rec.transcript.at(1)) continue;
      out.guess = bs.out;
      exhausted = false;
      break;
    }
  } else {
    out.guess = sample_b_output(spec, cfg, rec.transcript, known,
                                master.substream(3).seed(), &exhausted);
  }
  if (exhausted) out.insufficient_samples = true;
  out.queries_spent = oracle.ledger(Principal::Eve).count() - before;
  return out;
}

AttackOutcome resample_b_attack(const ProtocolSpec& spec,
                                const ExecutionRecord& rec, Oracle& oracle,
                                uint64_t seed) {
  AttackOutcome out;
  size_t before = oracle.ledger(Principal::Eve).count();
  ChargingView v(oracle, Principal::Eve);
  Rng rng(seed);
  out.guess = spec.run_b(v, rng, first_message(rec), std::nullopt).out;
  out.queries_spent = oracle.ledger(Principal::Eve).count() - before;
  return out;
}

AttackStats evaluate_attacker(const ProtocolSpec& spec,
                              const Attacker& attacker, size_t trials,
                              uint64_t seed, size_t workers) {
  if (trials == 0) throw parameter_error("evaluate_attacker: trials >= 1");
  Rng master(seed);
  std::vector<AttackOutcome> outcomes(trials);
  parallel_for(trials, workers, [&](size_t t) {
    Rng sub = master.substream(t);
    Oracle o(sub.substream(0).seed(), spec.domain_bits, spec.range_bits);
    ExecutionRecord rec = execute(spec, o, o, sub.substream(1).seed());
    AttackOutcome a = attacker(spec, rec, o, sub.substream(2).seed());
    a.success =
        rec.out_a.has_value() && a.guess.has_value() && *a.guess == *rec.out_a;
    outcomes[t] = std::move(a);
  });
  AttackStats st;
  st.trials = trials;
  size_t hits = 0;
  double queries = 0;
  for (const auto& a : outcomes) {
    if (a.success) ++hits;
    if (a.insufficient_samples) ++st.insufficient;
    if (a.truncated) ++st.truncated;
    queries += double(a.queries_spent);
  }
  st.success = double(hits) / double(trials);
  st.ci_halfwidth = hoeffding_ci(trials);
  st.mean_queries = queries / double(trials);
  return st;
}

}  // namespace oka
