#pragma once

#include "oka/protocol.hpp"

namespace oka {

// Raised when a conditional census accepts too few draws to trust the
// resulting frequency estimates.
struct insufficient_samples_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EveConfig {
  double delta = 0.05;          // heaviness threshold
  size_t mc_samples = 2000;     // census draws per heavy-set estimate
  size_t query_cap = 1u << 16;  // max oracle queries Eve may spend
  size_t min_accepted = 30;     // accepted draws required by the m1 census
  size_t sample_draws = 20000;  // cap on conditional-sampling attempts
};

struct HeavySets {
  std::vector<Point> e0, e1;  // e0 is always a subset of e1
  size_t accepted = 0;        // census draws consistent with m1
  bool truncated = false;     // hit query_cap while building e1
};

struct AttackOutcome {
  std::optional<Key> guess;
  size_t queries_spent = 0;
  bool success = false;  // filled in by evaluate_attacker
  bool insufficient_samples = false;
  bool truncated = false;
};

// Threshold 4*ell/q from the attack analysis; requires q >= 4*ell.
double default_delta(size_t ell, size_t q);

// Points with prior probability >= delta of landing in the union of both
// parties' query sets. Monte-Carlo census over the declared samplers.
std::vector<Point> compute_heavy_set_0(const ProtocolSpec& spec,
                                       const EveConfig& cfg, uint64_t seed);

// Points heavy under the posterior given M1 = m1 and the oracle pinned to
// `known`. Uses the spec's inverter when present, otherwise rejection over
// full reruns of A. Returns e1 = e0-union-posterior-heavy.
HeavySets compute_heavy_set_1(const ProtocolSpec& spec, const EveConfig& cfg,
                              const Message& m1,
                              const std::vector<std::pair<Point, Answer>>& known,
                              uint64_t seed);

// Samples B's output conditioned on the transcript and on F agreeing with
// `known`. Returns nullopt if no consistent draw is found within
// cfg.sample_draws; *exhausted reports that case when non-null.
std::optional<Key> sample_b_output(
    const ProtocolSpec& spec, const EveConfig& cfg,
    const std::vector<Message>& transcript,
    const std::vector<std::pair<Point, Answer>>& known, uint64_t seed,
    bool* exhausted = nullptr);

// The heavy-query attack: learn F on E0, refine to E1 given m1, learn the
// rest of E1, then sample B's output under the conditioned distribution.
// Oracle queries are charged to Principal::Eve on `oracle`. A precomputed E0
// (which depends only on spec and cfg) may be supplied to amortize the
// prior census across trials.
AttackOutcome heavy_query_eve_attack(const ProtocolSpec& spec,
                                     const EveConfig& cfg,
                                     const ExecutionRecord& rec, Oracle& oracle,
                                     uint64_t seed,
                                     const std::vector<Point>* precomputed_e0 =
                                         nullptr);

// Query-free attack for executions without shared oracle state: resample A's
// view consistent with the transcript and output what that A would output.
// Exact when, given m1, the second message is independent of A's view.
AttackOutcome consistent_view_attack(const ProtocolSpec& spec,
                                     const ExecutionRecord& rec, size_t draws,
                                     uint64_t seed);

// Learn F on the first `budget` domain points, then sample B's output under
// that knowledge. With full domain knowledge the transcript decouples from
// B's randomness and the sampler conditions on m2 alone.
AttackOutcome brute_force_attack(const ProtocolSpec& spec, const EveConfig& cfg,
                                 const ExecutionRecord& rec, Oracle& oracle,
                                 size_t budget, uint64_t seed);

// Baseline: run a fresh B against the true oracle and the observed m1, and
// output whatever that B outputs. Distributed exactly like out_B given m1, so
// for one-message protocols (where out_A is fixed before the reply) its
// success rate against out_A estimates the agreement probability.
AttackOutcome resample_b_attack(const ProtocolSpec& spec,
                                const ExecutionRecord& rec, Oracle& oracle,
                                uint64_t seed);

using Attacker = std::function<AttackOutcome(
    const ProtocolSpec&, const ExecutionRecord&, Oracle&, uint64_t seed)>;

struct AttackStats {
  double success = 0, ci_halfwidth = 0, mean_queries = 0;
  size_t trials = 0, insufficient = 0, truncated = 0;
};

// Runs `trials` fresh executions (seed-compatible with estimate_agreement, so
// trial t here reruns trial t there) and scores the attacker against out_A.
// Trials are independent; results do not depend on the worker count.
AttackStats evaluate_attacker(const ProtocolSpec& spec, const Attacker& attacker,
                              size_t trials, uint64_t seed, size_t workers = 1);

}  // namespace oka
