#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "oka/oracle.hpp"
#include "oka/rng.hpp"

namespace oka {

using Key = uint64_t;

// Fixed-width bit message; bits[0] is the first bit on the wire.
struct Message {
  std::vector<uint8_t> bits;

  size_t length() const { return bits.size(); }
  bool operator==(const Message& o) const { return bits == o.bits; }
  bool operator!=(const Message& o) const { return bits != o.bits; }

  static Message from_uint(uint64_t v, size_t width) {
    Message m;
    m.bits.resize(width);
    for (size_t i = 0; i < width; ++i) m.bits[i] = (v >> i) & 1;
    return m;
  }
  uint64_t to_uint() const {
    uint64_t v = 0;
    for (size_t i = 0; i < bits.size() && i < 64; ++i)
      v |= uint64_t{bits[i]} << i;
    return v;
  }
  Message& append(const Message& o) {
    bits.insert(bits.end(), o.bits.begin(), o.bits.end());
    return *this;
  }
  Message& append_bit(uint8_t b) {
    bits.push_back(b & 1);
    return *this;
  }
  Message xored(const Message& mask) const {
    Message m = *this;
    for (size_t i = 0; i < m.bits.size() && i < mask.bits.size(); ++i)
      m.bits[i] ^= mask.bits[i];
    return m;
  }
  std::string to_hex() const;
};

struct spec_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct budget_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A's half of a run. `finish` (set iff the protocol has a second message)
// maps B's reply to A's output using state captured at send time.
struct ASide {
  std::vector<Point> queries;
  std::vector<Answer> answers;
  Message m1;
  std::optional<Key> out;
  std::function<std::optional<Key>(const Message& m2)> finish;
};

struct BSide {
  std::vector<Point> queries;
  std::vector<Answer> answers;
  Message m2;
  std::optional<Key> out;
};

struct OracleAssignment {
  std::vector<std::pair<Point, Answer>> fixes;
};

using ForcedQueries = std::optional<std::vector<Point>>;

// Declarative two-party oracle protocol with at most two messages, A sending
// first. Every protocol modeled here fits this shape, and the eavesdropper
// machinery is scoped to it.
struct ProtocolSpec {
  std::string name;
  int domain_bits = 1;
  int range_bits = 1;
  int rounds = 0;  // number of messages: 0, 1 or 2
  int query_budget_a = 1;
  int query_budget_b = 1;
  int key_bits = 1;
  // When false, the Oracle passed to execute() is interpreted as public
  // randomness (Lambda-style emulations); parties may ignore it entirely.
  bool uses_shared_oracle = true;

  std::function<ASide(OracleView&, Rng&, const ForcedQueries&)> run_a;
  std::function<BSide(OracleView&, Rng&, const Message& m1,
                      const ForcedQueries&)>
      run_b;

  // Oracle-independent samplers of the realized query sets; for adaptive
  // protocols these simulate a run against a private fresh oracle.
  std::function<std::vector<Point>(Rng&)> sample_queries_a, sample_queries_b;

  // Optional posterior helper: given A's sampled queries and an observed m1,
  // either reject (nullopt) or accept together with oracle fixes under which
  // A reproduces m1 exactly. Exact when A's message pins F on its queries.
  std::function<std::optional<OracleAssignment>(
      const std::vector<Point>& a_queries, const Message& m1, Rng&)>
      invert_m1;

  std::map<std::string, double> params;
};

struct ExecutionRecord {
  std::vector<Point> x_queries, y_queries;
  std::vector<Answer> fx, fy;
  std::vector<Message> transcript;
  std::optional<Key> out_a, out_b;
  uint64_t oracle_seed_a = 0, oracle_seed_b = 0, rng_seed = 0;

  nlohmann::json to_json() const;
};

// Runs the protocol: A's move, B's move, A's finish. Oracle queries are
// charged to the owning party; oa == ob gives the shared-oracle model.
ExecutionRecord execute(const ProtocolSpec& spec, Oracle& oa, Oracle& ob,
                        uint64_t rng_seed,
                        const ForcedQueries& forced_x = std::nullopt,
                        const ForcedQueries& forced_y = std::nullopt);

// Convenience: one shared fresh oracle per run.
ExecutionRecord execute_fresh(const ProtocolSpec& spec, uint64_t oracle_seed,
                              uint64_t rng_seed);

size_t communication_cost(const ExecutionRecord& rec);

// True iff both parties produced a key and the keys are equal; abort never
// agrees, not even with another abort.
bool agreement(const ExecutionRecord& rec);

// Indices (into the deduplicated Y list) of B's queries lying in X minus the
// excluded set.
std::set<size_t> intersection_indices(const ExecutionRecord& rec,
                                      const std::set<Point>& excluded);

// Two-sided 95% Hoeffding half-width: sqrt(ln(2/0.05) / (2 n)).
double hoeffding_ci(size_t trials);

struct AgreementEstimate {
  double estimate = 0;
  double ci_halfwidth = 0;
  size_t trials = 0;
};

AgreementEstimate estimate_agreement(const ProtocolSpec& spec, size_t trials,
                                     uint64_t rng_seed);

}  // namespace oka
