#include "oka/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "json.hpp"

namespace oka {

std::string Message::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  uint8_t nib = 0;
  int fill = 0;
  for (size_t i = 0; i < bits.size(); ++i) {
    nib |= uint8_t(bits[i] & 1) << (i % 4);
    if (++fill == 4) {
      out.push_back(digits[nib]);
      nib = 0;
      fill = 0;
    }
  }
  if (fill) out.push_back(digits[nib]);
  return out;
}

namespace {

size_t distinct_count(const std::vector<Point>& pts) {
  std::unordered_set<Point> s(pts.begin(), pts.end());
  return s.size();
}

void check_budget(const char* party, const std::vector<Point>& pts,
                  size_t budget) {
  if (distinct_count(pts) > budget)
    throw budget_violation(std::string("query budget exceeded by party ") +
                           party);
}

}  // namespace

ExecutionRecord execute(const ProtocolSpec& spec, Oracle& oa, Oracle& ob,
                        uint64_t rng_seed, const ForcedQueries& forced_x,
                        const ForcedQueries& forced_y) {
  Rng master(rng_seed);
  Rng rng_a = master.substream(1);
  Rng rng_b = master.substream(2);

  ChargingView va(oa, Principal::A);
  ChargingView vb(ob, Principal::B);

  ExecutionRecord rec;
  rec.rng_seed = rng_seed;
  rec.oracle_seed_a = oa.seed();
  rec.oracle_seed_b = ob.seed();

  ASide a = spec.run_a(va, rng_a, forced_x);
  check_budget("A", a.queries, size_t(spec.query_budget_a));
  rec.x_queries = a.queries;
  rec.fx = a.answers;
  if (spec.rounds >= 1) rec.transcript.push_back(a.m1);

  BSide b = spec.run_b(vb, rng_b, a.m1, forced_y);
  check_budget("B", b.queries, size_t(spec.query_budget_b));
  rec.y_queries = b.queries;
  rec.fy = b.answers;
  if (spec.rounds >= 2) rec.transcript.push_back(b.m2);

  rec.out_b = b.out;
  rec.out_a = a.finish ? a.finish(b.m2) : a.out;

  if (rec.transcript.size() != size_t(spec.rounds))
    throw spec_error("transcript length does not match declared round count");
  return rec;
}

ExecutionRecord execute_fresh(const ProtocolSpec& spec, uint64_t oracle_seed,
                              uint64_t rng_seed) {
  Oracle o(oracle_seed, spec.domain_bits, spec.range_bits);
  return execute(spec, o, o, rng_seed);
}

size_t communication_cost(const ExecutionRecord& rec) {
  size_t bits = 0;
  for (const auto& m : rec.transcript) bits += m.length();
  return bits;
}

bool agreement(const ExecutionRecord& rec) {
  return rec.out_a.has_value() && rec.out_b.has_value() &&
         *rec.out_a == *rec.out_b;
}

std::set<size_t> intersection_indices(const ExecutionRecord& rec,
                                      const std::set<Point>& excluded) {
  std::unordered_set<Point> x(rec.x_queries.begin(), rec.x_queries.end());
  std::set<size_t> out;
  std::unordered_set<Point> seen;
  size_t idx = 0;
  for (Point y : rec.y_queries) {
    if (!seen.insert(y).second) continue;
    if (x.count(y) && !excluded.count(y)) out.insert(idx);
    ++idx;
  }
  return out;
}

double hoeffding_ci(size_t trials) {
  return std::sqrt(std::log(2.0 / 0.05) / (2.0 * double(trials)));
}

AgreementEstimate estimate_agreement(const ProtocolSpec& spec, size_t trials,
                                     uint64_t rng_seed) {
  if (trials == 0) throw parameter_error("estimate_agreement: trials >= 1");
  Rng master(rng_seed);
  size_t hits = 0;
  for (size_t t = 0; t < trials; ++t) {
    Rng sub = master.substream(t);
    ExecutionRecord rec =
        execute_fresh(spec, sub.substream(0).seed(), sub.substream(1).seed());
    if (agreement(rec)) ++hits;
  }
  return {double(hits) / double(trials), hoeffding_ci(trials), trials};
}

nlohmann::json ExecutionRecord::to_json() const {
  nlohmann::json j;
  j["x_queries"] = x_queries;
  j["y_queries"] = y_queries;
  j["fx"] = fx;
  j["fy"] = fy;
  std::vector<std::string> msgs;
  for (const auto& m : transcript) msgs.push_back(m.to_hex());
  j["transcript_hex"] = msgs;
  j["transcript_bits"] = [&] {
    std::vector<size_t> lens;
    for (const auto& m : transcript) lens.push_back(m.length());
    return lens;
  }();
  j["out_a"] = out_a.has_value() ? nlohmann::json(*out_a) : nlohmann::json();
  j["out_b"] = out_b.has_value() ? nlohmann::json(*out_b) : nlohmann::json();
  j["oracle_seed_a"] = oracle_seed_a;
  j["oracle_seed_b"] = oracle_seed_b;
  j["rng_seed"] = rng_seed;
  return j;
}

}  // namespace oka
