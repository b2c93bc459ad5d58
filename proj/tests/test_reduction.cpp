#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "oka/eavesdrop.hpp"
#include "oka/protocols.hpp"
#include "oka/reduction.hpp"
#include "oka/stats.hpp"

using namespace oka;

namespace {

size_t shared_count(const std::vector<Point>& x, const std::vector<Point>& y) {
  std::set<Point> sx(x.begin(), x.end());
  size_t n = 0;
  for (Point p : y) n += sx.count(p);
  return n;
}

// X uniform ell-subset, Y shares exactly the single element x[0].
std::pair<std::vector<Point>, std::vector<Point>> one_shared(
    size_t ell, uint64_t universe, uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> x = uniform_subset(rng, ell, universe);
  std::vector<Point> y{x[0]};
  // uniform completion avoiding X
  std::vector<Point> pool;
  for (uint64_t v = 0; v < universe; ++v)
    if (std::find(x.begin(), x.end(), Point(v)) == x.end())
      pool.push_back(Point(v));
  for (size_t i = 0; i + 1 < ell; ++i) {
    std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    y.push_back(pool[i]);
  }
  return {x, y};
}

// Oracle-independent two-message protocol with a one-bit key: both parties
// output the parity of the XOR of their forced answers; B reveals its bit.
ProtocolSpec parity_probe() {
  ProtocolSpec s;
  s.name = "parity_probe";
  s.domain_bits = 2;
  s.range_bits = 1;
  s.rounds = 2;
  s.key_bits = 1;
  s.query_budget_a = s.query_budget_b = 4;
  auto points = [](const ForcedQueries& forced) {
    return forced ? *forced : std::vector<Point>{0, 1, 2, 3};
  };
  s.sample_queries_a = [](Rng& rng) { return uniform_subset(rng, 4, 4); };
  s.sample_queries_b = s.sample_queries_a;
  s.run_a = [points](OracleView& view, Rng&, const ForcedQueries& forced) {
    ASide a;
    a.queries = points(forced);
    Answer acc = 0;
    for (Point p : a.queries) {
      Answer v = view.ask(p);
      a.answers.push_back(v);
      acc ^= v;
    }
    a.m1 = Message::from_uint(0, 1);
    a.out = Key(acc & 1);
    return a;
  };
  s.run_b = [points](OracleView& view, Rng&, const Message&,
                     const ForcedQueries& forced) {
    BSide b;
    b.queries = points(forced);
    Answer acc = 0;
    for (Point p : b.queries) {
      Answer v = view.ask(p);
      b.answers.push_back(v);
      acc ^= v;
    }
    b.m2 = Message::from_uint(acc & 1, 1);
    b.out = Key(acc & 1);
    return b;
  };
  return s;
}

}  // namespace

TEST_CASE("hard-instance sampler matches the declared mixture") {
  size_t ones = 0;
  for (uint64_t t = 0; t < 4000; ++t) {
    DisjointnessInstance inst = sample_hard_instance(32, t);
    CHECK(inst.x.size() == 8);
    CHECK(inst.y.size() == 8);
    size_t sh = shared_count(inst.x, inst.y);
    if (inst.label == DisjointnessLabel::IntersectOne) {
      CHECK(sh == 1);
      ++ones;
    } else {
      CHECK(sh == 0);
    }
  }
  CHECK(std::abs(double(ones) / 4000.0 - 0.25) < 0.035);
  CHECK_THROWS_AS(sample_hard_instance(7, 1), parameter_error);
}

TEST_CASE("shared-randomness emulation agrees on identical inputs") {
  ProtocolSpec ka = merkle_puzzles(16, 256);
  Rng rng(2);
  for (uint64_t t = 0; t < 10; ++t) {
    std::vector<Point> x = uniform_subset(rng, 16, 256);
    ExecutionRecord rec = run_lambda_com(ka, x, x, 100 + t, 200 + t);
    CHECK(agreement(rec));
  }
}

TEST_CASE("private emulation with equal seeds equals the shared emulation") {
  ProtocolSpec ka = merkle_puzzles(16, 256);
  auto [x, y] = one_shared(16, 256, 5);
  ExecutionRecord com = run_lambda_com(ka, x, y, 42, 43);
  ExecutionRecord dist = run_lambda_dist(ka, x, y, 42, 42, 43);
  CHECK(com.to_json().dump() == dist.to_json().dump());
  CHECK_THROWS_AS(run_lambda_com(ka, {Point(0)}, y, 1, 2), parameter_error);
}

TEST_CASE("one shared element separates the emulations") {
  ProtocolSpec ka = merkle_puzzles(16, 256);
  size_t trials = 300, hits_com = 0, hits_dist = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    auto [x, y] = one_shared(16, 256, 1000 + t);
    if (agreement(run_lambda_com(ka, x, y, 3 * t, 7 * t + 1))) ++hits_com;
    if (agreement(run_lambda_dist(ka, x, y, 3 * t, 5 * t + 2, 7 * t + 1)))
      ++hits_dist;
  }
  CHECK(double(hits_com) / double(trials) >= 0.8);
  CHECK(double(hits_dist) / double(trials) <= 0.2);
}

TEST_CASE("agreement outcomes across emulation runs look independent") {
  ProtocolSpec ka = merkle_puzzles(16, 256);
  std::vector<int> bits;
  for (uint64_t t = 0; t < 200; ++t) {
    auto [x, y] = one_shared(16, 256, 5000 + t);
    bits.push_back(agreement(run_lambda_com(ka, x, y, 11 * t + 3, 13 * t + 5))
                       ? 1
                       : 0);
  }
  CHECK(runs_test(bits) > 0.001);
}

TEST_CASE("calibration finds the jump at intersection size one") {
  ProtocolSpec ka = merkle_puzzles(16, 256);
  AccProfile prof = calibrate_acc_profile(ka, 16, 3000, {0, 1}, 9);
  double ci = prof.acc_com.at(0).ci;
  CHECK(std::abs(prof.suc.at(0)) <= 2 * (2 * ci));
  CHECK(prof.suc.at(1) >= 0.5);
  CHECK(prof.chosen_c == 1);
  CHECK(prof.gap > 0);
  CHECK(prof.high_counter_means_intersect);
  AccProfile rt = AccProfile::from_json(prof.to_json());
  CHECK(rt.chosen_c == prof.chosen_c);
  CHECK(rt.gap == prof.gap);
  CHECK(rt.acc_com.at(1).estimate == prof.acc_com.at(1).estimate);
}

TEST_CASE("an oracle-free protocol yields no calibration gap") {
  ProtocolSpec s;
  s.name = "const_key";
  s.domain_bits = 8;
  s.range_bits = 1;
  s.rounds = 1;
  s.key_bits = 1;
  s.query_budget_a = s.query_budget_b = 8;
  s.run_a = [](OracleView&, Rng&, const ForcedQueries&) {
    ASide a;
    a.m1 = Message::from_uint(0, 1);
    a.out = Key(0);
    return a;
  };
  s.run_b = [](OracleView&, Rng&, const Message&, const ForcedQueries&) {
    BSide b;
    b.out = Key(0);
    return b;
  };
  CHECK_THROWS_AS(calibrate_acc_profile(s, 8, 500, {0, 1}, 3), no_gap_error);
}

TEST_CASE("input padding controls the intersection exactly") {
  std::vector<Point> x{0, 1}, y{1, 2};
  auto [px2, py2] = pad_inputs(x, y, 8, 2);
  CHECK(px2.size() == 8);
  CHECK(py2.size() == 8);
  CHECK(shared_count(px2, py2) == 2);  // the shared 1 plus one block element
  auto [px1, py1] = pad_inputs(x, y, 8, 1);
  CHECK(shared_count(px1, py1) == 1);
  for (Point p : px1) CHECK(p < 32);
  CHECK_THROWS_AS(pad_inputs(x, y, 8, 0), parameter_error);
  CHECK_THROWS_AS(pad_inputs(x, y, 8, 7), parameter_error);
  CHECK_THROWS_AS(pad_inputs({Point(0)}, y, 8, 1), parameter_error);
}

TEST_CASE("repetition count follows the Hoeffding bound") {
  CHECK(required_repetitions(0.1, 0.25) == 19);
  CHECK(required_repetitions(std::exp(-2.0), std::sqrt(0.5)) == 2);
  double ratio = double(required_repetitions(0.01, 0.05)) /
                 double(required_repetitions(0.01, 0.1));
  CHECK(ratio > 3.9);
  CHECK(ratio < 4.1);
  CHECK_THROWS_AS(required_repetitions(0.0, 0.1), parameter_error);
  CHECK_THROWS_AS(required_repetitions(1.5, 0.1), parameter_error);
  CHECK_THROWS_AS(required_repetitions(0.1, 0.0), parameter_error);
}

TEST_CASE("the calibrated solver decides disjointness") {
  ProtocolSpec ka = merkle_puzzles(32, 128);
  AccProfile prof = calibrate_acc_profile(ka, 32, 2500, {0, 1}, 21);
  SetSolverConfig cfg = SetSolverConfig::from_profile(prof, 0.2);
  CHECK(cfg.c == 1);
  size_t expected_cc = 32 * 2 * 7 + 5;  // m1 answers + m2 index
  CHECK(expected_cc == 453);
  size_t errors = 0, instances = 60;
  for (uint64_t j = 0; j < instances; ++j) {
    DisjointnessInstance inst = sample_hard_instance(32, 9000 + j);
    SolveResult res = solve_disjointness(inst, ka, prof, cfg, 70000 + j);
    CHECK(res.k == cfg.k);
    CHECK(res.communication_bits == cfg.k * (expected_cc + 1) + 1);
    bool truth = inst.label == DisjointnessLabel::Disjoint;
    if (res.disjoint != truth) ++errors;
  }
  CHECK(double(errors) / double(instances) <= 0.3);
}

TEST_CASE("forced uniform inputs reproduce native sampling") {
  ProtocolSpec ka = merkle_puzzles(16, 256);
  AgreementEstimate native = estimate_agreement(ka, 3000, 61);
  size_t trials = 3000, hits = 0;
  Rng master(62);
  for (uint64_t t = 0; t < trials; ++t) {
    Rng sub = master.substream(t);
    Rng dr = sub.substream(0);
    std::vector<Point> x = uniform_subset(dr, 16, 256);
    std::vector<Point> y = uniform_subset(dr, 16, 256);
    if (agreement(run_lambda_com(ka, x, y, sub.substream(1).seed(),
                                 sub.substream(2).seed())))
      ++hits;
  }
  double lam = double(hits) / double(trials);
  CHECK(std::abs(native.estimate - lam) <
        2 * (native.ci_halfwidth + hoeffding_ci(trials)));
}

TEST_CASE("a transcript attacker turns secrecy loss into an agreement gap") {
  ProtocolSpec ka = parity_probe();
  TranscriptAttacker reveal = [](const std::vector<Message>& transcript,
                                 Rng&) -> std::optional<Key> {
    return Key(transcript.at(1).to_uint() & 1);
  };
  auto [com, dist] = build_secrecy_gap_wrapper(ka, reveal);
  AgreementEstimate ac = estimate_agreement(com, 1000, 71);
  AgreementEstimate ad = estimate_agreement(dist, 1000, 72);
  CHECK(ad.estimate - ac.estimate >= 0.4);

  TranscriptAttacker blind = [](const std::vector<Message>&,
                                Rng&) -> std::optional<Key> { return Key(0); };
  auto [com2, dist2] = build_secrecy_gap_wrapper(ka, blind);
  AgreementEstimate bc = estimate_agreement(com2, 1000, 73);
  AgreementEstimate bd = estimate_agreement(dist2, 1000, 74);
  CHECK(std::abs(bd.estimate - bc.estimate) <= 0.1);

  CHECK_THROWS_AS(build_secrecy_gap_wrapper(merkle_puzzles(4, 16), reveal),
                  spec_error);
}
