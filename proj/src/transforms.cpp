#include "oka/transforms.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

#include "oka/eavesdrop.hpp"

namespace oka {

namespace {

// Drops entries whose point sits in `table`, keeping queries/answers aligned.
template <typename Map>
void strip_fixed(std::vector<Point>& qs, std::vector<Answer>& as,
                 const Map& table) {
  size_t w = 0;
  for (size_t i = 0; i < qs.size(); ++i) {
    if (table.count(qs[i])) continue;
    qs[w] = qs[i];
    if (i < as.size()) as[w] = as[i];
    ++w;
  }
  as.resize(std::min(as.size(), w));
  qs.resize(w);
}

}  // namespace

HeavyElimination eliminate_apriori_heavy(const ProtocolSpec& spec, double delta,
                                         size_t mc_samples, uint64_t seed) {
  EveConfig cfg;
  cfg.delta = delta;
  cfg.mc_samples = mc_samples;
  Rng master(seed);

  HeavyElimination out;
  out.e0 = compute_heavy_set_0(spec, cfg, master.substream(1).seed());
  Oracle table(master.substream(2).seed(), spec.domain_bits, spec.range_bits);
  for (Point p : out.e0) out.fixed.emplace_back(p, table.value(p));

  auto fm = std::make_shared<std::unordered_map<Point, Answer>>(
      out.fixed.begin(), out.fixed.end());

  ProtocolSpec s = spec;
  s.name = spec.name + "+noheavy";
  s.params["noheavy_delta"] = delta;
  s.invert_m1 = nullptr;  // messages now mix F and R; use the rejection path

  s.run_a = [inner = spec.run_a, fm](OracleView& view, Rng& rng,
                                     const ForcedQueries& forced) {
    OverlayView ov(view, *fm);
    ASide a = inner(ov, rng, forced);
    strip_fixed(a.queries, a.answers, *fm);
    return a;
  };
  s.run_b = [inner = spec.run_b, fm](OracleView& view, Rng& rng,
                                     const Message& m1,
                                     const ForcedQueries& forced) {
    OverlayView ov(view, *fm);
    BSide b = inner(ov, rng, m1, forced);
    strip_fixed(b.queries, b.answers, *fm);
    return b;
  };
  auto filter_sampler = [fm](std::function<std::vector<Point>(Rng&)> inner) {
    return [inner, fm](Rng& rng) {
      std::vector<Point> qs = inner(rng);
      std::vector<Answer> none;
      strip_fixed(qs, none, *fm);
      return qs;
    };
  };
  if (spec.sample_queries_a)
    s.sample_queries_a = filter_sampler(spec.sample_queries_a);
  if (spec.sample_queries_b)
    s.sample_queries_b = filter_sampler(spec.sample_queries_b);

  out.spec = std::move(s);
  return out;
}

ProtocolSpec key_as_last_query(const ProtocolSpec& spec) {
  if (spec.rounds != 2)
    throw spec_error("key_as_last_query needs a two-message protocol");
  if (spec.key_bits != 1)
    throw spec_error("key_as_last_query needs a single-bit key");

  uint64_t dsize = uint64_t{1} << spec.domain_bits;
  ProtocolSpec s = spec;
  s.name = spec.name + "+keylast";
  s.query_budget_b = spec.query_budget_b + 1;

  s.run_a = [inner = spec.run_a](OracleView& view, Rng& rng,
                                 const ForcedQueries& forced) {
    ASide a = inner(view, rng, forced);
    a.finish = [f = a.finish](const Message& m2) -> std::optional<Key> {
      if (m2.length() < 1) return std::nullopt;
      Message head{{m2.bits.begin(), m2.bits.end() - 1}};
      uint8_t b = m2.bits.back() & 1;
      std::optional<Key> base = f ? f(head) : std::nullopt;
      if (!base) return std::nullopt;
      return Key((*base ^ b) & 1);
    };
    a.out = std::nullopt;
    return a;
  };

  s.run_b = [inner = spec.run_b, dsize](OracleView& view, Rng& rng,
                                        const Message& m1,
                                        const ForcedQueries& forced) {
    BSide b = inner(view, rng, m1, forced);
    Point extra = Point(rng.below(dsize));
    Answer ans = view.ask(extra);
    b.queries.push_back(extra);
    b.answers.push_back(ans);
    uint8_t k1 = uint8_t(extra & 1);  // new key: low bit of the extra query
    uint8_t old_bit = b.out ? uint8_t(*b.out & 1) : 0;
    b.m2.append_bit(k1 ^ old_bit);
    b.out = b.out ? std::optional<Key>(Key(k1)) : std::nullopt;
    return b;
  };

  if (spec.sample_queries_b)
    s.sample_queries_b = [inner = spec.sample_queries_b, dsize](Rng& rng) {
      std::vector<Point> qs = inner(rng);
      qs.push_back(Point(rng.below(dsize)));
      return qs;
    };
  return s;
}

}  // namespace oka
