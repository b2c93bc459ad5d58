#include "oka/protocols.hpp"

#include <algorithm>
#include <unordered_map>

namespace oka {

int ceil_log2(uint64_t n) {
  int w = 0;
  while ((uint64_t{1} << w) < n) ++w;
  return w;
}

namespace {

std::vector<Point> sample_iid(Rng& rng, size_t ell, uint64_t universe) {
  std::vector<Point> pts(ell);
  for (auto& p : pts) p = Point(rng.below(universe));
  return pts;
}

}  // namespace

std::vector<Point> uniform_subset(Rng& rng, size_t k, uint64_t universe) {
  if (k > universe)
    throw parameter_error("uniform_subset: k exceeds universe size");
  std::vector<Point> pool(universe);
  for (uint64_t i = 0; i < universe; ++i) pool[i] = Point(i);
  for (size_t i = 0; i < k; ++i)
    std::swap(pool[i], pool[i + rng.below(universe - i)]);
  pool.resize(k);
  return pool;
}

namespace {

std::vector<Point> sample_subset(Rng& rng, size_t ell, uint64_t universe) {
  return uniform_subset(rng, ell, universe);
}

Message encode_answers(const std::vector<Answer>& as, size_t width) {
  Message m;
  for (Answer a : as) m.append(Message::from_uint(a, width));
  return m;
}

}  // namespace

ProtocolSpec merkle_puzzles(size_t ell, uint64_t universe_size,
                            MerkleSampling mode) {
  if (ell < 1) throw parameter_error("merkle: ell >= 1 required");
  if (universe_size < ell)
    throw parameter_error("merkle: universe must hold ell distinct elements");
  int dbits = std::max(1, ceil_log2(universe_size));
  int rbits = std::max(1, 2 * ceil_log2(universe_size));
  if (rbits < ceil_log2(ell))
    throw spec_error("merkle: range too narrow to separate puzzle answers");
  size_t iw = std::max(1, ceil_log2(ell));  // index message width

  ProtocolSpec s;
  s.name = "merkle_puzzles";
  s.domain_bits = dbits;
  s.range_bits = rbits;
  s.rounds = 2;
  s.query_budget_a = int(ell);
  s.query_budget_b = int(ell);
  s.key_bits = dbits;
  s.params = {{"ell", double(ell)},
              {"universe", double(universe_size)},
              {"iid", mode == MerkleSampling::IID ? 1.0 : 0.0}};

  auto sample = [ell, universe_size, mode](Rng& rng) {
    return mode == MerkleSampling::IID ? sample_iid(rng, ell, universe_size)
                                       : sample_subset(rng, ell, universe_size);
  };
  s.sample_queries_a = sample;
  s.sample_queries_b = sample;

  s.run_a = [sample, rbits, iw](OracleView& view, Rng& rng,
                                const ForcedQueries& forced) {
    ASide a;
    a.queries = forced ? *forced : sample(rng);
    for (Point p : a.queries) a.answers.push_back(view.ask(p));
    a.m1 = encode_answers(a.answers, size_t(rbits));
    a.finish = [qs = a.queries](const Message& m2) -> std::optional<Key> {
      size_t i = size_t(m2.to_uint());
      if (i >= qs.size()) return std::nullopt;
      return Key(qs[i]);
    };
    return a;
  };

  s.run_b = [sample, ell, rbits, iw](OracleView& view, Rng& rng,
                                     const Message& m1,
                                     const ForcedQueries& forced) {
    BSide b;
    b.queries = forced ? *forced : sample(rng);
    for (Point p : b.queries) b.answers.push_back(view.ask(p));
    // First matching pair in index order: smallest i, then smallest j.
    std::unordered_map<Answer, size_t> first_j;
    for (size_t j = 0; j < b.answers.size(); ++j)
      first_j.emplace(b.answers[j], j);
    for (size_t i = 0; i < ell; ++i) {
      Answer ai = Message{{m1.bits.begin() + i * rbits,
                           m1.bits.begin() + (i + 1) * rbits}}
                      .to_uint();
      auto it = first_j.find(ai);
      if (it != first_j.end()) {
        b.m2 = Message::from_uint(i, iw);
        b.out = Key(b.queries[it->second]);
        return b;
      }
    }
    b.m2 = Message::from_uint(0, iw);  // no match: abort, output withheld
    b.out = std::nullopt;
    return b;
  };

  s.invert_m1 = [ell, rbits](const std::vector<Point>& a_queries,
                             const Message& m1,
                             Rng&) -> std::optional<OracleAssignment> {
    if (a_queries.size() != ell || m1.length() != ell * size_t(rbits))
      return std::nullopt;
    std::unordered_map<Point, Answer> fixed;
    OracleAssignment out;
    for (size_t i = 0; i < ell; ++i) {
      Answer ai = Message{{m1.bits.begin() + i * rbits,
                           m1.bits.begin() + (i + 1) * rbits}}
                      .to_uint();
      auto [it, fresh] = fixed.emplace(a_queries[i], ai);
      if (!fresh) {
        if (it->second != ai) return std::nullopt;
        continue;
      }
      out.fixes.emplace_back(a_queries[i], ai);
    }
    return out;
  };

  return s;
}

ProtocolSpec matrix_rowcol(size_t ell) {
  if (ell < 2) throw parameter_error("matrix_rowcol: ell >= 2 required");
  int dbits = ceil_log2(ell * ell);
  int rbits = 2 * dbits;
  size_t wl = size_t(ceil_log2(ell));

  ProtocolSpec s;
  s.name = "matrix_rowcol";
  s.domain_bits = dbits;
  s.range_bits = rbits;
  s.rounds = 2;
  s.query_budget_a = int(ell);
  s.query_budget_b = int(ell);
  s.key_bits = 1;
  s.params = {{"ell", double(ell)}};

  auto row_points = [ell](uint64_t a) {
    std::vector<Point> pts(ell);
    for (size_t j = 0; j < ell; ++j) pts[j] = Point(a * ell + j);
    return pts;
  };
  auto col_points = [ell](uint64_t b) {
    std::vector<Point> pts(ell);
    for (size_t i = 0; i < ell; ++i) pts[i] = Point(i * ell + b);
    return pts;
  };
  s.sample_queries_a = [row_points, ell](Rng& rng) {
    return row_points(rng.below(ell));
  };
  s.sample_queries_b = [col_points, ell](Rng& rng) {
    return col_points(rng.below(ell));
  };

  s.run_a = [row_points, ell, wl](OracleView& view, Rng& rng,
                                  const ForcedQueries& forced) {
    uint64_t a = forced ? uint64_t((*forced)[0]) / ell : rng.below(ell);
    ASide side;
    side.queries = row_points(a);
    for (Point p : side.queries) side.answers.push_back(view.ask(p));
    side.m1 = Message::from_uint(a, wl);
    side.finish = [row = side.answers](const Message& m2)
        -> std::optional<Key> {
      Answer v = m2.to_uint();
      for (size_t j = 0; j < row.size(); ++j)
        if (row[j] == v) return Key(j & 1);
      return std::nullopt;
    };
    return side;
  };

  s.run_b = [col_points, ell, rbits](OracleView& view, Rng& rng,
                                     const Message& m1,
                                     const ForcedQueries& forced) {
    uint64_t b = forced ? uint64_t((*forced)[0]) % ell : rng.below(ell);
    uint64_t a = m1.to_uint() % ell;
    BSide side;
    side.queries = col_points(b);
    for (Point p : side.queries) side.answers.push_back(view.ask(p));
    side.m2 = Message::from_uint(side.answers[a], size_t(rbits));
    side.out = Key(b & 1);
    return side;
  };

  // m1 is a deterministic function of the row alone, so inversion is just a
  // consistency check; no oracle answers need pinning.
  s.invert_m1 = [ell, wl](const std::vector<Point>& a_queries,
                          const Message& m1,
                          Rng&) -> std::optional<OracleAssignment> {
    if (a_queries.empty()) return std::nullopt;
    uint64_t a = uint64_t(a_queries[0]) / ell;
    if (Message::from_uint(a, wl) != m1) return std::nullopt;
    return OracleAssignment{};
  };

  return s;
}

ProtocolSpec xor_masked_rowcol(size_t ell) {
  ProtocolSpec base = matrix_rowcol(ell);
  size_t wl = size_t(ceil_log2(ell));
  int rbits = base.range_bits;

  ProtocolSpec s = base;
  s.name = "xor_masked_rowcol";
  s.query_budget_a = int(ell) + 1;
  s.query_budget_b = int(ell) + 1;
  s.invert_m1 = nullptr;  // message depends on F(1); rejection path applies

  s.sample_queries_a = [inner = base.sample_queries_a](Rng& rng) {
    std::vector<Point> pts{Point(1)};
    auto row = inner(rng);
    pts.insert(pts.end(), row.begin(), row.end());
    return pts;
  };
  s.sample_queries_b = [inner = base.sample_queries_b](Rng& rng) {
    std::vector<Point> pts{Point(1)};
    auto col = inner(rng);
    pts.insert(pts.end(), col.begin(), col.end());
    return pts;
  };

  s.run_a = [inner = base.run_a, wl, rbits](OracleView& view, Rng& rng,
                                            const ForcedQueries& forced) {
    if (forced) throw spec_error("xor_masked_rowcol: forced queries unsupported");
    Answer mask = view.ask(1);
    ASide side = inner(view, rng, std::nullopt);
    side.queries.insert(side.queries.begin(), Point(1));
    side.answers.insert(side.answers.begin(), mask);
    side.m1 = side.m1.xored(Message::from_uint(mask, wl));
    side.finish = [f = side.finish, mask, rbits](const Message& m2) {
      return f(m2.xored(Message::from_uint(mask, size_t(rbits))));
    };
    return side;
  };

  s.run_b = [inner = base.run_b, wl, rbits](OracleView& view, Rng& rng,
                                            const Message& m1,
                                            const ForcedQueries& forced) {
    if (forced) throw spec_error("xor_masked_rowcol: forced queries unsupported");
    Answer mask = view.ask(1);
    BSide side =
        inner(view, rng, m1.xored(Message::from_uint(mask, wl)), std::nullopt);
    side.queries.insert(side.queries.begin(), Point(1));
    side.answers.insert(side.answers.begin(), mask);
    side.m2 = side.m2.xored(Message::from_uint(mask, size_t(rbits)));
    return side;
  };

  return s;
}

ProtocolSpec hash_chain_adaptive(int n) {
  if (n < 2 || n % 2 != 0 || n > 24)
    throw parameter_error("hash_chain_adaptive: n must be even, in [2,24]");
  size_t ell = size_t{1} << (n / 2);
  uint64_t xmask = (uint64_t{1} << n) - 1;
  uint64_t gtag = uint64_t{1} << n;  // top bit selects the second function

  ProtocolSpec s;
  s.name = "hash_chain_adaptive";
  s.domain_bits = n + 1;
  s.range_bits = n;
  s.rounds = 1;
  s.query_budget_a = int(ell) + 1;
  s.query_budget_b = int(2 * ell);
  s.key_bits = n;
  s.params = {{"n", double(n)}, {"ell", double(ell)}};

  // c_0 = start, c_{k+1} = f(c_k); returns c_0..c_{ell-1} and their answers.
  auto walk = [ell, xmask](OracleView& view, uint64_t start,
                           std::vector<Point>& qs, std::vector<Answer>& as) {
    std::vector<uint64_t> chain{start & xmask};
    for (size_t k = 0; k + 1 < ell; ++k) {
      Answer nxt = view.ask(Point(chain.back()));
      qs.push_back(Point(chain.back()));
      as.push_back(nxt);
      chain.push_back(nxt & xmask);
    }
    return chain;
  };

  s.run_a = [walk, ell, gtag, xmask, n](OracleView& view, Rng& rng,
                                        const ForcedQueries& forced) {
    if (forced)
      throw spec_error("hash_chain_adaptive: forced queries unsupported");
    ASide a;
    auto chain = walk(view, rng.below(xmask + 1), a.queries, a.answers);
    // One more f-step so A's f-query count is exactly ell.
    a.queries.push_back(Point(chain.back()));
    a.answers.push_back(view.ask(Point(chain.back())));
    size_t i = rng.below(ell);
    Answer tag = view.ask(Point(gtag | chain[i]));
    a.queries.push_back(Point(gtag | chain[i]));
    a.answers.push_back(tag);
    a.m1 = Message::from_uint(tag, size_t(n));
    a.out = Key(chain[i]);
    return a;
  };

  s.run_b = [walk, ell, gtag, n](OracleView& view, Rng& rng, const Message& m1,
                                 const ForcedQueries& forced) {
    if (forced)
      throw spec_error("hash_chain_adaptive: forced queries unsupported");
    BSide b;
    auto chain = walk(view, rng.u64(), b.queries, b.answers);
    b.queries.push_back(Point(chain.back()));
    b.answers.push_back(view.ask(Point(chain.back())));
    Answer want = m1.to_uint();
    for (size_t j = 0; j < ell; ++j) {
      Answer tag = view.ask(Point(gtag | chain[j]));
      b.queries.push_back(Point(gtag | chain[j]));
      b.answers.push_back(tag);
      if (tag == want && !b.out) b.out = Key(chain[j]);
    }
    return b;
  };

  // Adaptive queries: sample by simulating the party against a private fresh
  // oracle. B's query set does not depend on m1 (every tag is probed anyway).
  int db = s.domain_bits, rb = s.range_bits;
  s.sample_queries_a = [run = s.run_a, db, rb](Rng& rng) {
    Oracle priv(rng.u64(), db, rb);
    ChargingView v(priv, Principal::A);
    Rng sub = rng.substream(0x51);
    return run(v, sub, std::nullopt).queries;
  };
  s.sample_queries_b = [run = s.run_b, db, rb, n](Rng& rng) {
    Oracle priv(rng.u64(), db, rb);
    ChargingView v(priv, Principal::B);
    Rng sub = rng.substream(0x51);
    return run(v, sub, Message::from_uint(0, size_t(n)), std::nullopt).queries;
  };
  return s;
}

ProtocolSpec trivial_point() {
  ProtocolSpec s;
  s.name = "trivial_point";
  s.domain_bits = 2;
  s.range_bits = 8;
  s.rounds = 0;
  s.query_budget_a = 1;
  s.query_budget_b = 1;
  s.key_bits = 8;
  s.run_a = [](OracleView& view, Rng&, const ForcedQueries&) {
    ASide a;
    a.queries = {Point(1)};
    a.answers = {view.ask(1)};
    a.out = Key(a.answers[0]);
    return a;
  };
  s.run_b = [](OracleView& view, Rng&, const Message&, const ForcedQueries&) {
    BSide b;
    b.queries = {Point(1)};
    b.answers = {view.ask(1)};
    b.out = Key(b.answers[0]);
    return b;
  };
  s.sample_queries_a = [](Rng&) { return std::vector<Point>{Point(1)}; };
  s.sample_queries_b = s.sample_queries_a;
  return s;
}

}  // namespace oka
