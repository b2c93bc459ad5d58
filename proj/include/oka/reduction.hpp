#pragma once

#include <map>

#include "json.hpp"

#include "oka/protocol.hpp"

namespace oka {

// Raised by calibration when no intersection size separates the shared- and
// private-randomness emulations beyond statistical error.
struct no_gap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DisjointnessLabel { Disjoint, IntersectOne };

struct DisjointnessInstance {
  std::vector<Point> x, y;  // subsets of [ell], each of size ell/4
  DisjointnessLabel label = DisjointnessLabel::Disjoint;
};

struct EstimateCi {
  double estimate = 0;
  double ci = 0;
};

// Accuracy-by-intersection-size profile of a key-agreement protocol under
// the two oracle-free emulations (shared public randomness vs independent
// private randomness), plus the calibrated decision parameters.
struct AccProfile {
  std::map<int, EstimateCi> acc_com, acc_dist;
  std::map<int, double> suc;  // suc(i) = acc_com(i) - acc_dist(i)
  int chosen_c = 0, chosen_d = 0;
  double gap = 0;  // acc_com(c) - acc_com(c-1), sign per orientation
  bool high_counter_means_intersect = true;
  uint64_t seed = 0;
  size_t trials_per_size = 0;

  nlohmann::json to_json() const;
  static AccProfile from_json(const nlohmann::json& j);
};

struct SetSolverConfig {
  size_t k = 1;            // repetition count
  double threshold = 0.5;  // (acc_com(c) + acc_com(c-1)) / 2
  int c = 1;
  double epsilon = 0.1;

  static SetSolverConfig from_profile(const AccProfile& profile,
                                      double epsilon);
};

struct SolveResult {
  bool disjoint = false;
  size_t counter = 0;  // agreeing repetitions
  size_t k = 0;
  size_t communication_bits = 0;  // sum over repetitions of transcript bits
};

// D_ell: with probability 3/4 a uniform disjoint pair, else a uniform pair
// sharing exactly one element; |X| = |Y| = ell/4 over universe [ell].
DisjointnessInstance sample_hard_instance(size_t ell, uint64_t rng_seed);

// Runs `ka` with A's queries forced to X and B's to Y. Both sides answered
// by one shared oracle (public randomness)...
ExecutionRecord run_lambda_com(const ProtocolSpec& ka,
                               const std::vector<Point>& x,
                               const std::vector<Point>& y,
                               uint64_t shared_seed, uint64_t rng_seed);

// ...or by two independent private oracles.
ExecutionRecord run_lambda_dist(const ProtocolSpec& ka,
                                const std::vector<Point>& x,
                                const std::vector<Point>& y, uint64_t seed_a,
                                uint64_t seed_b, uint64_t rng_seed);

// For each requested intersection size i, estimates agreement of both
// emulations on uniform (X, Y) conditioned on |X intersect Y| = i, and picks
// the decision size c and witness size d from the Suc curve.
AccProfile calibrate_acc_profile(const ProtocolSpec& ka, size_t ell,
                                 size_t trials_per_size,
                                 const std::vector<int>& sizes,
                                 uint64_t rng_seed);

// Transcript-only attacker used by the secrecy-gap wrapper.
using TranscriptAttacker =
    std::function<std::optional<Key>(const std::vector<Message>&, Rng&)>;

// Wraps the two emulations of a single-bit-key protocol so that B outputs
// the negated attacker guess; a secrecy gap between the emulations becomes
// an agreement gap between the returned specs (shared first, private second).
std::pair<ProtocolSpec, ProtocolSpec> build_secrecy_gap_wrapper(
    const ProtocolSpec& ka, const TranscriptAttacker& attacker);

// Pads (X, Y) into ell-subsets of [4*ell]: a shared block of c-1 elements
// starting at ell, then disjoint per-party filler blocks at 2*ell and 3*ell.
// Guarantees |X' intersect Y'| = (c-1) + |X intersect Y|.
std::pair<std::vector<Point>, std::vector<Point>> pad_inputs(
    const std::vector<Point>& x, const std::vector<Point>& y, size_t ell,
    int c);

// k = ceil(ln(1/epsilon) / (2 * half_gap^2)); natural log per Hoeffding.
size_t required_repetitions(double epsilon, double half_gap);

// Majority vote over k shared-randomness emulations on freshly permuted
// padded inputs; the counter of agreements against the calibrated threshold
// decides disjointness.
SolveResult solve_disjointness(const DisjointnessInstance& instance,
                               const ProtocolSpec& ka,
                               const AccProfile& profile,
                               const SetSolverConfig& cfg, uint64_t rng_seed);

}  // namespace oka
