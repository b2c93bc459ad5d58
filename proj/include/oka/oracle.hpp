#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "oka/rng.hpp"

namespace oka {

using Point = uint32_t;
using Answer = uint64_t;

enum class Principal { A = 0, B = 1, Eve = 2 };

struct parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Distinct points a principal has queried, in first-query order. Duplicate
// queries are recorded once: repeated queries carry no information and are
// charged once against the budget.
class QueryLedger {
 public:
  void record(Point p) {
    if (seen_.insert(p).second) points_.push_back(p);
  }
  const std::vector<Point>& points() const { return points_; }
  size_t count() const { return points_.size(); }
  bool contains(Point p) const { return seen_.count(p) != 0; }

 private:
  std::vector<Point> points_;
  std::unordered_set<Point> seen_;
};

// Lazy random function F : {0,1}^d -> {0,1}^r with per-principal query
// accounting and programmable fixed answers. Answers are a keyed hash of
// (seed, point) truncated to r bits, so two handles built with equal
// (seed, d, r, programmed) agree at every point without sharing state.
class Oracle {
 public:
  Oracle(uint64_t seed, int domain_bits, int range_bits)
      : seed_(seed), domain_bits_(domain_bits), range_bits_(range_bits) {
    if (domain_bits < 1 || domain_bits > 30)
      throw parameter_error("oracle: domain_bits must be in [1,30]");
    if (range_bits < 1 || range_bits > 64)
      throw parameter_error("oracle: range_bits must be in [1,64]");
  }

  uint64_t seed() const { return seed_; }
  int domain_bits() const { return domain_bits_; }
  int range_bits() const { return range_bits_; }
  uint64_t domain_size() const { return uint64_t{1} << domain_bits_; }
  uint64_t range_mask() const {
    return range_bits_ == 64 ? ~uint64_t{0} : (uint64_t{1} << range_bits_) - 1;
  }

  // Answer without touching any ledger.
  Answer value(Point p) const {
    check_point(p);
    auto it = programmed_.find(p);
    if (it != programmed_.end()) return it->second;
    return mix64(mix64(seed_ ^ 0xa0761d6478bd642fULL) ^ (uint64_t{p} + 1)) &
           range_mask();
  }

  Answer query(Principal who, Point p) {
    Answer a = value(p);
    ledgers_[static_cast<int>(who)].record(p);
    return a;
  }

  const QueryLedger& ledger(Principal who) const {
    return ledgers_[static_cast<int>(who)];
  }

  // New handle whose programmed map is the union, assignment winning on
  // overlap. Ledgers start empty; this handle is unchanged.
  Oracle with_answers(
      const std::vector<std::pair<Point, Answer>>& assignment) const {
    Oracle out(seed_, domain_bits_, range_bits_);
    out.programmed_ = programmed_;
    for (const auto& [p, a] : assignment) {
      check_point(p);
      if ((a & ~range_mask()) != 0)
        throw parameter_error("oracle: programmed answer exceeds range width");
      out.programmed_[p] = a;
    }
    return out;
  }

  // Independent handle: same widths, fresh seed, no programming, empty
  // ledgers.
  Oracle fork(uint64_t new_seed) const {
    return Oracle(new_seed, domain_bits_, range_bits_);
  }

  const std::unordered_map<Point, Answer>& programmed() const {
    return programmed_;
  }

 private:
  void check_point(Point p) const {
    if (uint64_t{p} >= domain_size())
      throw parameter_error("oracle: point outside domain");
  }

  uint64_t seed_;
  int domain_bits_;
  int range_bits_;
  std::unordered_map<Point, Answer> programmed_;
  std::array<QueryLedger, 3> ledgers_;
};

// Access interface handed to protocol parties. Implementations charge the
// right ledger or overlay fixed answers on top of another view.
class OracleView {
 public:
  virtual ~OracleView() = default;
  virtual Answer ask(Point p) = 0;
};

class ChargingView : public OracleView {
 public:
  ChargingView(Oracle& o, Principal who) : oracle_(o), who_(who) {}
  Answer ask(Point p) override { return oracle_.query(who_, p); }

 private:
  Oracle& oracle_;
  Principal who_;
};

// Ledger-free access for scratch simulations (rejection sampling, censuses)
// where query accounting is meaningless and would dominate the cost.
class ValueView : public OracleView {
 public:
  explicit ValueView(const Oracle& o) : oracle_(o) {}
  Answer ask(Point p) override { return oracle_.value(p); }

 private:
  const Oracle& oracle_;
};

// Answers points present in the overlay from the fixed table without
// consulting (or charging) the inner view.
class OverlayView : public OracleView {
 public:
  OverlayView(OracleView& inner,
              const std::unordered_map<Point, Answer>& fixed)
      : inner_(inner), fixed_(fixed) {}
  Answer ask(Point p) override {
    auto it = fixed_.find(p);
    if (it != fixed_.end()) return it->second;
    return inner_.ask(p);
  }

 private:
  OracleView& inner_;
  const std::unordered_map<Point, Answer>& fixed_;
};

}  // namespace oka
