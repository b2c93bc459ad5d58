#pragma once

#include "oka/protocol.hpp"

namespace oka {

struct HeavyElimination {
  ProtocolSpec spec;
  std::vector<Point> e0;                           // a-priori heavy points
  std::vector<std::pair<Point, Answer>> fixed;     // public table R = F|E0
};

// Publishes a fresh random table R on the a-priori delta-heavy points; both
// parties answer those points from R instead of querying. Query budgets are
// unchanged; the heavy points vanish from the query distribution.
HeavyElimination eliminate_apriori_heavy(const ProtocolSpec& spec, double delta,
                                         size_t mc_samples, uint64_t seed);

// Appends one bit to B's last message: B draws one extra uniform query, makes
// its low bit the new secret key, and sends that bit masked with the old key.
// Requires a two-message protocol with a single-bit key. Agreement is
// preserved run by run and the appended bit is an independent coin.
ProtocolSpec key_as_last_query(const ProtocolSpec& spec);

}  // namespace oka
