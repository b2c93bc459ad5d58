#include "doctest.h"

#include <cmath>
#include <unordered_map>

#include "oka/protocol.hpp"
#include "oka/protocols.hpp"

using namespace oka;

TEST_CASE("message round trips and xor involution") {
  Message m = Message::from_uint(0b1011, 6);
  CHECK(m.length() == 6);
  CHECK(m.to_uint() == 0b1011);
  Message mask = Message::from_uint(0b111111, 6);
  CHECK(m.xored(mask).xored(mask) == m);
  CHECK(Message::from_uint(0xabc, 12).to_hex() == "cba");
}

TEST_CASE("trivial protocol always agrees with zero communication") {
  ProtocolSpec s = trivial_point();
  for (uint64_t seed = 0; seed < 20; ++seed) {
    ExecutionRecord rec = execute_fresh(s, seed, seed + 100);
    CHECK(agreement(rec));
    CHECK(communication_cost(rec) == 0);
  }
  AgreementEstimate est = estimate_agreement(s, 50, 7);
  CHECK(est.estimate == 1.0);
}

TEST_CASE("merkle with a one-element universe always agrees") {
  ProtocolSpec s = merkle_puzzles(1, 1);
  for (uint64_t seed = 0; seed < 20; ++seed)
    CHECK(agreement(execute_fresh(s, seed, seed * 3 + 1)));
}

TEST_CASE("replay with identical seeds reproduces the record") {
  ProtocolSpec s = merkle_puzzles(4, 32);
  ExecutionRecord a = execute_fresh(s, 42, 99);
  ExecutionRecord b = execute_fresh(s, 42, 99);
  CHECK(a.to_json().dump() == b.to_json().dump());
}

TEST_CASE("merkle communication cost matches the field count") {
  // M1 = ell answers of width 2*log2(universe), M2 = index of width
  // ceil(log2 ell); at ell=16, universe=256 this is 16*16 + 4 = 260 bits.
  ProtocolSpec s = merkle_puzzles(16, 256);
  ExecutionRecord rec = execute_fresh(s, 1, 2);
  size_t expected = 16 * 2 * 8 + 4;
  CHECK(expected == 260);
  CHECK(communication_cost(rec) == expected);
}

TEST_CASE("communication cost sums message lengths") {
  ExecutionRecord rec;
  CHECK(communication_cost(rec) == 0);
  rec.transcript = {Message::from_uint(0, 1), Message::from_uint(1, 1)};
  CHECK(communication_cost(rec) == 2);
}

TEST_CASE("agreement semantics: abort never agrees") {
  ExecutionRecord rec;
  rec.out_a = Key(5);
  rec.out_b = Key(5);
  CHECK(agreement(rec));
  rec.out_b = Key(6);
  CHECK_FALSE(agreement(rec));
  rec.out_a = std::nullopt;
  rec.out_b = std::nullopt;
  CHECK_FALSE(agreement(rec));
  rec.out_a = Key(0);
  CHECK_FALSE(agreement(rec));
}

TEST_CASE("intersection indices") {
  ExecutionRecord rec;
  rec.x_queries = {1, 2, 3};
  rec.y_queries = {1, 2, 3};
  CHECK(intersection_indices(rec, {}) == std::set<size_t>{0, 1, 2});
  rec.y_queries = {7, 8};
  CHECK(intersection_indices(rec, {}).empty());
  rec.x_queries = {20, 30};  // X = {b, c}
  rec.y_queries = {10, 20, 30};  // Y = [a, b, c]
  CHECK(intersection_indices(rec, {Point(30)}) == std::set<size_t>{1});
}

TEST_CASE("hoeffding interval formula") {
  CHECK(hoeffding_ci(10000) ==
        doctest::Approx(std::sqrt(std::log(2.0 / 0.05) / 20000.0)));
  CHECK_THROWS_AS(estimate_agreement(trivial_point(), 0, 1), parameter_error);
}

TEST_CASE("budget violations are attributed") {
  ProtocolSpec s = trivial_point();
  s.run_a = [](OracleView& view, Rng&, const ForcedQueries&) {
    ASide a;
    a.queries = {0, 1};  // budget is 1
    for (Point p : a.queries) a.answers.push_back(view.ask(p));
    a.out = Key(0);
    return a;
  };
  CHECK_THROWS_AS(execute_fresh(s, 1, 1), budget_violation);
}

TEST_CASE("independent uniform outputs agree half the time") {
  ProtocolSpec s;
  s.name = "coin_pair";
  s.domain_bits = 2;
  s.range_bits = 1;
  s.rounds = 0;
  s.key_bits = 1;
  s.run_a = [](OracleView&, Rng& rng, const ForcedQueries&) {
    ASide a;
    a.out = Key(rng.u64() & 1);
    return a;
  };
  s.run_b = [](OracleView&, Rng& rng, const Message&, const ForcedQueries&) {
    BSide b;
    b.out = Key(rng.u64() & 1);
    return b;
  };
  AgreementEstimate est = estimate_agreement(s, 10000, 5);
  CHECK(std::abs(est.estimate - 0.5) < est.ci_halfwidth);
}

namespace {

// Direct simulation of the iid puzzle-sampling experiment, sharing no code
// with the protocol engine: explicit lazy maps for the random function.
double direct_merkle_iid_agreement(size_t ell, uint64_t universe, int rbits,
                                   size_t trials, uint64_t seed) {
  Rng rng(seed);
  size_t hits = 0;
  for (size_t t = 0; t < trials; ++t) {
    std::unordered_map<Point, Answer> f;
    auto F = [&](Point p) {
      auto it = f.find(p);
      if (it == f.end())
        it = f.emplace(p, rng.u64() & ((Answer{1} << rbits) - 1)).first;
      return it->second;
    };
    std::vector<Point> x(ell), y(ell);
    for (auto& p : x) p = Point(rng.below(universe));
    for (auto& p : y) p = Point(rng.below(universe));
    std::vector<Answer> ax(ell), ay(ell);
    for (size_t i = 0; i < ell; ++i) ax[i] = F(x[i]);
    for (size_t j = 0; j < ell; ++j) ay[j] = F(y[j]);
    // B scans i in order, taking the smallest matching j.
    bool agreed = false;
    for (size_t i = 0; i < ell && !agreed; ++i)
      for (size_t j = 0; j < ell; ++j)
        if (ay[j] == ax[i]) {
          agreed = (y[j] == x[i]);
          i = ell;  // first match decides
          break;
        }
    if (agreed) ++hits;
  }
  return double(hits) / double(trials);
}

}  // namespace

TEST_CASE("merkle iid agreement matches an independent simulation") {
  ProtocolSpec s = merkle_puzzles(16, 256, MerkleSampling::IID);
  AgreementEstimate est = estimate_agreement(s, 4000, 11);
  double direct = direct_merkle_iid_agreement(16, 256, 16, 100000, 1234);
  CHECK(std::abs(est.estimate - direct) <
        est.ci_halfwidth + hoeffding_ci(100000));
}

TEST_CASE("execution record serializes its seeds") {
  ProtocolSpec s = trivial_point();
  ExecutionRecord rec = execute_fresh(s, 5, 6);
  nlohmann::json j = rec.to_json();
  CHECK(j["oracle_seed_a"] == 5);
  CHECK(j["rng_seed"] == 6);
}
