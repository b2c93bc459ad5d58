#include "oka/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json.hpp"

namespace oka {

namespace {

double xlog2(double p) { return p <= 0 ? 0.0 : p * std::log2(p); }

std::vector<size_t> name_indices(const JointDistribution& d,
                                 const std::vector<std::string>& names) {
  std::vector<size_t> idx;
  for (const auto& n : names) idx.push_back(d.axis(n));
  return idx;
}

// Removes from `group` any axis that also appears in `given`.
std::vector<std::string> minus_axes(const std::vector<std::string>& group,
                                    const std::vector<std::string>& given) {
  std::vector<std::string> out;
  for (const auto& n : group)
    if (std::find(given.begin(), given.end(), n) == given.end())
      out.push_back(n);
  return out;
}

}  // namespace

JointDistribution::JointDistribution(std::vector<std::string> axis_names,
                                     std::vector<size_t> sizes)
    : names_(std::move(axis_names)), sizes_(std::move(sizes)) {
  if (names_.size() != sizes_.size() || names_.empty())
    throw parameter_error("joint: axis names and sizes must align");
  size_t cells = 1;
  for (size_t s : sizes_) {
    if (s < 1) throw parameter_error("joint: empty alphabet");
    cells *= s;
  }
  probs_.assign(cells, 0.0);
}

size_t JointDistribution::index_of(const std::vector<size_t>& idx) const {
  if (idx.size() != sizes_.size())
    throw parameter_error("joint: index arity mismatch");
  size_t flat = 0;
  for (size_t a = 0; a < sizes_.size(); ++a) {
    if (idx[a] >= sizes_[a]) throw parameter_error("joint: index out of range");
    flat = flat * sizes_[a] + idx[a];
  }
  return flat;
}

void JointDistribution::decode(size_t flat, std::vector<size_t>& idx) const {
  idx.resize(sizes_.size());
  for (size_t a = sizes_.size(); a-- > 0;) {
    idx[a] = flat % sizes_[a];
    flat /= sizes_[a];
  }
}

size_t JointDistribution::axis(const std::string& name) const {
  for (size_t a = 0; a < names_.size(); ++a)
    if (names_[a] == name) return a;
  throw parameter_error("joint: unknown axis " + name);
}

void JointDistribution::normalize() {
  double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (total <= 0) throw parameter_error("joint: cannot normalize zero mass");
  for (double& p : probs_) p /= total;
}

void JointDistribution::check_normalized(double tol) const {
  double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > tol)
    throw parameter_error("joint: probabilities do not sum to 1");
}

JointDistribution JointDistribution::marginal(
    const std::vector<std::string>& keep) const {
  std::vector<size_t> kidx = name_indices(*this, keep);
  std::vector<size_t> ksizes;
  for (size_t a : kidx) ksizes.push_back(sizes_[a]);
  JointDistribution out(keep, ksizes);
  std::vector<size_t> idx, sub(kidx.size());
  for (size_t f = 0; f < probs_.size(); ++f) {
    if (probs_[f] == 0) continue;
    decode(f, idx);
    for (size_t a = 0; a < kidx.size(); ++a) sub[a] = idx[kidx[a]];
    out.probs()[out.index_of(sub)] += probs_[f];
  }
  return out;
}

JointDistribution JointDistribution::condition(
    const std::vector<std::pair<std::string, size_t>>& fixed) const {
  std::vector<bool> drop(sizes_.size(), false);
  std::vector<size_t> want(sizes_.size(), 0);
  for (const auto& [name, v] : fixed) {
    size_t a = axis(name);
    if (v >= sizes_[a]) throw parameter_error("joint: condition out of range");
    drop[a] = true;
    want[a] = v;
  }
  std::vector<std::string> knames;
  std::vector<size_t> ksizes;
  for (size_t a = 0; a < sizes_.size(); ++a)
    if (!drop[a]) {
      knames.push_back(names_[a]);
      ksizes.push_back(sizes_[a]);
    }
  if (knames.empty()) throw parameter_error("joint: conditioned on all axes");
  JointDistribution out(knames, ksizes);
  std::vector<size_t> idx, sub;
  double mass = 0;
  for (size_t f = 0; f < probs_.size(); ++f) {
    if (probs_[f] == 0) continue;
    decode(f, idx);
    bool ok = true;
    for (size_t a = 0; a < sizes_.size(); ++a)
      if (drop[a] && idx[a] != want[a]) {
        ok = false;
        break;
      }
    if (!ok) continue;
    sub.clear();
    for (size_t a = 0; a < sizes_.size(); ++a)
      if (!drop[a]) sub.push_back(idx[a]);
    out.probs()[out.index_of(sub)] += probs_[f];
    mass += probs_[f];
  }
  if (mass <= 0)
    throw parameter_error("joint: conditioning event has zero probability");
  for (double& p : out.probs()) p /= mass;
  return out;
}

JointDistribution JointDistribution::with_derived_axis(
    const std::string& name, size_t new_size,
    const std::function<size_t(const std::vector<size_t>&)>& f) const {
  std::vector<std::string> nn = names_;
  nn.push_back(name);
  std::vector<size_t> ns = sizes_;
  ns.push_back(new_size);
  JointDistribution out(nn, ns);
  std::vector<size_t> idx;
  for (size_t flat = 0; flat < probs_.size(); ++flat) {
    if (probs_[flat] == 0) continue;
    decode(flat, idx);
    size_t v = f(idx);
    if (v >= new_size)
      throw parameter_error("joint: derived value out of range");
    idx.push_back(v);
    out.probs()[out.index_of(idx)] += probs_[flat];
    idx.pop_back();
  }
  return out;
}

JointDistribution JointDistribution::random(
    std::vector<std::string> axis_names, std::vector<size_t> sizes, Rng& rng,
    double floor_mass) {
  JointDistribution out(std::move(axis_names), std::move(sizes));
  for (double& p : out.probs()) {
    double u = rng.uniform();
    p = -std::log(std::max(u, 1e-300));  // Exp(1); Dirichlet(1,..,1) scaled
  }
  out.normalize();
  for (double& p : out.probs()) p = std::max(p, floor_mass);
  out.normalize();
  return out;
}

double statistical_distance(const JointDistribution& p,
                            const JointDistribution& q) {
  if (p.sizes() != q.sizes())
    throw parameter_error("statistical_distance: alphabet mismatch");
  double d = 0;
  for (size_t f = 0; f < p.cells(); ++f)
    d += std::abs(p.probs()[f] - q.probs()[f]);
  return d / 2;
}

double max_event_gap(const JointDistribution& p, const JointDistribution& q) {
  if (p.sizes() != q.sizes())
    throw parameter_error("max_event_gap: alphabet mismatch");
  size_t n = p.cells();
  if (n > 20) throw parameter_error("max_event_gap: alphabet too large");
  double best = 0;
  for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
    double gap = 0;
    for (size_t i = 0; i < n; ++i)
      if (mask & (size_t{1} << i)) gap += p.probs()[i] - q.probs()[i];
    best = std::max(best, gap);
  }
  return best;
}

double f_divergence(const std::function<double(double)>& f,
                    const JointDistribution& p, const JointDistribution& q) {
  if (p.sizes() != q.sizes())
    throw parameter_error("f_divergence: alphabet mismatch");
  if (std::abs(f(1.0)) > 1e-12)
    throw parameter_error("f_divergence: f(1) must be 0");
  double sum = 0;
  for (size_t i = 0; i < p.cells(); ++i) {
    double pp = p.probs()[i], qq = q.probs()[i];
    if (qq <= 0) {
      if (pp > 1e-15)
        throw parameter_error("f_divergence: support violation (P not << Q)");
      continue;
    }
    sum += qq * f(pp / qq);
  }
  return sum;
}

double kl_divergence(const JointDistribution& p, const JointDistribution& q) {
  return f_divergence([](double t) { return t <= 0 ? 0.0 : t * std::log2(t); },
                      p, q);
}

double entropy(const JointDistribution& dist) {
  double h = 0;
  for (double p : dist.probs()) h -= xlog2(p);
  return h;
}

double conditional_entropy(const JointDistribution& joint,
                           const std::vector<std::string>& target,
                           const std::vector<std::string>& given) {
  if (given.empty()) return entropy(joint.marginal(target));
  auto tgt = minus_axes(target, given);
  if (tgt.empty()) return 0.0;
  JointDistribution g = joint.marginal(given);
  std::vector<size_t> idx;
  double h = 0;
  for (size_t f = 0; f < g.cells(); ++f) {
    double p = g.probs()[f];
    if (p <= 0) continue;
    g.decode(f, idx);
    std::vector<std::pair<std::string, size_t>> fixed;
    for (size_t a = 0; a < given.size(); ++a) fixed.emplace_back(given[a], idx[a]);
    h += p * entropy(joint.condition(fixed).marginal(tgt));
  }
  return h;
}

double mutual_information(const JointDistribution& joint,
                          const std::vector<std::string>& g1,
                          const std::vector<std::string>& g2,
                          const std::vector<std::string>& given) {
  auto a = minus_axes(g1, given), b = minus_axes(g2, given);
  if (a.empty() || b.empty()) return 0.0;
  if (given.empty()) {
    std::vector<std::string> both = a;
    both.insert(both.end(), b.begin(), b.end());
    return entropy(joint.marginal(a)) + entropy(joint.marginal(b)) -
           entropy(joint.marginal(both));
  }
  JointDistribution g = joint.marginal(given);
  std::vector<size_t> idx;
  double mi = 0;
  for (size_t f = 0; f < g.cells(); ++f) {
    double p = g.probs()[f];
    if (p <= 0) continue;
    g.decode(f, idx);
    std::vector<std::pair<std::string, size_t>> fixed;
    for (size_t i = 0; i < given.size(); ++i) fixed.emplace_back(given[i], idx[i]);
    mi += p * mutual_information(joint.condition(fixed), a, b, {});
  }
  return mi;
}

double sd_information(const JointDistribution& joint,
                      const std::vector<std::string>& g1,
                      const std::vector<std::string>& g2,
                      const std::vector<std::string>& given) {
  auto a = minus_axes(g1, given), b = minus_axes(g2, given);
  if (a.empty() || b.empty()) return 0.0;
  if (given.empty()) {
    std::vector<std::string> both = a;
    both.insert(both.end(), b.begin(), b.end());
    JointDistribution j = joint.marginal(both);
    JointDistribution ma = joint.marginal(a), mb = joint.marginal(b);
    // SD(joint, product of marginals) over the product space.
    double d = 0;
    std::vector<size_t> idx;
    for (size_t f = 0; f < j.cells(); ++f) {
      j.decode(f, idx);
      std::vector<size_t> ia(idx.begin(), idx.begin() + a.size());
      std::vector<size_t> ib(idx.begin() + a.size(), idx.end());
      d += std::abs(j.probs()[f] - ma.at(ia) * mb.at(ib));
    }
    return d / 2;
  }
  JointDistribution g = joint.marginal(given);
  std::vector<size_t> idx;
  double d = 0;
  for (size_t f = 0; f < g.cells(); ++f) {
    double p = g.probs()[f];
    if (p <= 0) continue;
    g.decode(f, idx);
    std::vector<std::pair<std::string, size_t>> fixed;
    for (size_t i = 0; i < given.size(); ++i) fixed.emplace_back(given[i], idx[i]);
    d += p * sd_information(joint.condition(fixed), a, b, {});
  }
  return d;
}

namespace {

// Accumulates "lhs <= rhs" checks (and |lhs - rhs| for equalities).
struct ReportBuilder {
  InequalityReport rep;

  InequalityReport::Item& item(const std::string& name) {
    for (auto& it : rep.items)
      if (it.name == name) return it;
    rep.items.push_back({name, 0, 0.0, 1e300});
    return rep.items.back();
  }
  void leq(const std::string& name, double lhs, double rhs) {
    auto& it = item(name);
    ++it.instances;
    it.max_violation = std::max(it.max_violation, lhs - rhs);
    it.min_slack = std::min(it.min_slack, rhs - lhs);
  }
  void eq(const std::string& name, double lhs, double rhs) {
    auto& it = item(name);
    ++it.instances;
    it.max_violation = std::max(it.max_violation, std::abs(lhs - rhs));
    it.min_slack = 0;
  }
  InequalityReport finish(double tol) {
    rep.tol = tol;
    rep.max_violation = 0;
    for (auto& it : rep.items) {
      it.max_violation = std::max(it.max_violation, 0.0);
      rep.max_violation = std::max(rep.max_violation, it.max_violation);
    }
    rep.pass = rep.max_violation <= tol;
    return rep;
  }
};

double binary_entropy(double p) { return -xlog2(p) - xlog2(1 - p); }

void battery(ReportBuilder& rb, const JointDistribution& j, Rng& rng) {
  const std::vector<std::string> A{"A"}, B{"B"}, C{"C"}, D{"D"};
  size_t na = j.sizes()[j.axis("A")];

  double i_ab = mutual_information(j, A, B);
  rb.leq("pinsker", sd_information(j, A, B),
         2 * std::sqrt(std::max(i_ab, 0.0)));
  rb.leq("information_nonneg", 0.0, i_ab);
  rb.leq("information_upper", i_ab, entropy(j.marginal(A)));

  // Random deterministic map of A for the data-processing facts.
  std::vector<size_t> table(na);
  for (auto& v : table) v = rng.below(2);
  auto fa = [&, ax = j.axis("A")](const std::vector<size_t>& idx) {
    return table[idx[ax]];
  };
  JointDistribution jf = j.with_derived_axis("FA", 2, fa);
  rb.leq("data_processing_information", mutual_information(jf, {"FA"}, B),
         i_ab);
  rb.leq("data_processing_entropy", entropy(jf.marginal({"FA"})),
         entropy(j.marginal(A)));

  double i_ab_c = mutual_information(j, A, B, {"C"});
  double i_ab_cd = mutual_information(j, A, B, {"C", "D"});
  double i_ad_c = mutual_information(j, A, D, {"C"});
  double i_ad_cb = mutual_information(j, A, D, {"C", "B"});
  rb.leq("cond_add_lower", -i_ad_c, i_ab_cd - i_ab_c);
  rb.leq("cond_add_upper", i_ab_cd - i_ab_c, i_ad_cb);

  double sd_ab = sd_information(j, A, B);
  rb.leq("sd_chain_rule", sd_information(j, A, B, {"C"}),
         2 * sd_information(j, {"A", "C"}, B));
  rb.leq("sd_cond_add", sd_information(j, C, A),
         sd_information(j, C, A, {"B"}) + sd_ab);
  rb.leq("sd_var_rep", sd_information(j, A, B, {"C"}),
         2 * sd_information(j, A, C, {"B"}) + 2 * sd_ab);

  // Indicator chain rule: E_m realized as per-m deterministic maps of E = D.
  size_t nm = j.sizes()[j.axis("C")];  // M := C, E := D
  size_t nd = j.sizes()[j.axis("D")];
  std::vector<std::vector<size_t>> fm(nm, std::vector<size_t>(nd));
  for (auto& row : fm)
    for (auto& v : row) v = rng.below(2);
  auto em_sel = [&, mc = j.axis("C"), dc = j.axis("D")](
                    const std::vector<size_t>& idx) {
    return fm[idx[mc]][idx[dc]];
  };
  double lhs = mutual_information(j.with_derived_axis("EM", 2, em_sel), A, B,
                                  {"C", "EM"});
  double rhs = 0;
  for (size_t m = 0; m < nm; ++m) {
    auto em = [&, dc = j.axis("D")](const std::vector<size_t>& idx) {
      return fm[m][idx[dc]];
    };
    auto jm = [&, mc = j.axis("C")](const std::vector<size_t>& idx) {
      return size_t(idx[mc] == m ? 1 : 0);
    };
    JointDistribution je =
        j.with_derived_axis("Em", 2, em).with_derived_axis("Jm", 2, jm);
    rhs += mutual_information(je, A, B, {"Em"}) +
           mutual_information(je, {"Jm"}, B, {"Em", "A"});
  }
  rb.leq("indicator_chain_rule", lhs, rhs);

  // Entropy chain rule over three axes.
  rb.eq("entropy_chain_rule", entropy(j.marginal({"A", "B", "C"})),
        entropy(j.marginal(A)) + conditional_entropy(j, B, {"A"}) +
            conditional_entropy(j, C, {"A", "B"}));
}

}  // namespace

InequalityReport check_inequalities(size_t batch, size_t max_alphabet,
                                    uint64_t seed, double tol) {
  if (max_alphabet < 2 || max_alphabet > 4)
    throw parameter_error("check_inequalities: alphabet sizes in [2,4]");
  Rng master(seed);
  ReportBuilder rb;

  auto rand_sizes = [&](Rng& r) {
    std::vector<size_t> s(4);
    for (auto& v : s) v = 2 + r.below(max_alphabet - 1);
    return s;
  };

  for (size_t t = 0; t < batch + 3; ++t) {
    Rng sub = master.substream(t);
    std::vector<std::string> names{"A", "B", "C", "D"};
    JointDistribution j = [&]() {
      if (t == batch) {  // point mass
        JointDistribution d(names, {2, 2, 2, 2});
        d.probs()[0] = 1.0;
        return d;
      }
      if (t == batch + 1) {  // uniform
        JointDistribution d(names, {3, 2, 3, 2});
        for (double& p : d.probs()) p = 1.0 / double(d.cells());
        return d;
      }
      if (t == batch + 2) {  // near-degenerate
        JointDistribution d(names, {2, 2, 2, 2});
        for (double& p : d.probs()) p = 1e-9;
        d.probs()[5] = 1.0;
        d.normalize();
        return d;
      }
      return JointDistribution::random(names, rand_sizes(sub), sub);
    }();
    battery(rb, j, sub);

    // Bernoulli indicator-entropy bound, including boundary p values.
    double p = t == 0 ? 0.5 : (t == 1 ? 1e-9 : sub.uniform() * 0.5);
    rb.leq("indicator_entropy", binary_entropy(p),
           p <= 0 ? 0.0 : p * (std::log2(1.0 / p) + 4.0));

    // SD data processing on a pair of single-axis distributions.
    {
      size_t n = 2 + sub.below(3);
      JointDistribution P = JointDistribution::random({"U"}, {n}, sub);
      JointDistribution Q = JointDistribution::random({"U"}, {n}, sub);
      std::vector<size_t> table(n);
      for (auto& v : table) v = sub.below(2);
      auto f = [&](const std::vector<size_t>& idx) { return table[idx[0]]; };
      rb.leq("sd_data_processing",
             statistical_distance(P.with_derived_axis("F", 2, f).marginal({"F"}),
                                  Q.with_derived_axis("F", 2, f).marginal({"F"})),
             statistical_distance(P, Q));
    }

    // SD expectation decomposition on a joint with matching B/C alphabets.
    {
      JointDistribution e =
          JointDistribution::random({"A", "B", "C"}, {3, 3, 3}, sub);
      double lhs = statistical_distance(e.marginal({"A", "B"}),
                                        e.marginal({"A", "C"}));
      JointDistribution ma = e.marginal({"A"});
      double rhs = 0;
      for (size_t a = 0; a < 3; ++a) {
        double pa = ma.probs()[a];
        if (pa <= 0) continue;
        JointDistribution s = e.condition({{"A", a}});
        rhs += pa * statistical_distance(s.marginal({"B"}), s.marginal({"C"}));
      }
      rb.eq("sd_expectation", lhs, rhs);
    }

    // SD product removal: SD(A x B, A x C) = SD(B, C).
    {
      JointDistribution pa = JointDistribution::random({"A"}, {3}, sub);
      JointDistribution pb = JointDistribution::random({"U"}, {4}, sub);
      JointDistribution pc = JointDistribution::random({"U"}, {4}, sub);
      JointDistribution ab({"A", "U"}, {3, 4}), ac({"A", "U"}, {3, 4});
      for (size_t a = 0; a < 3; ++a)
        for (size_t u = 0; u < 4; ++u) {
          ab.at({a, u}) = pa.probs()[a] * pb.probs()[u];
          ac.at({a, u}) = pa.probs()[a] * pc.probs()[u];
        }
      rb.eq("sd_remove_product", statistical_distance(ab, ac),
            statistical_distance(pb, pc));
    }

    // Variable-replacement corollary under A independent of B:
    // build P(a) P(b) P(m | a, b).
    {
      JointDistribution pa = JointDistribution::random({"A"}, {3}, sub);
      JointDistribution pb = JointDistribution::random({"B"}, {3}, sub);
      JointDistribution ind({"A", "B", "M"}, {3, 3, 3});
      for (size_t a = 0; a < 3; ++a)
        for (size_t b = 0; b < 3; ++b) {
          JointDistribution ch = JointDistribution::random({"M"}, {3}, sub);
          for (size_t m = 0; m < 3; ++m)
            ind.at({a, b, m}) =
                pa.probs()[a] * pb.probs()[b] * ch.probs()[m];
        }
      rb.leq("sd_var_rep_indep", sd_information(ind, {"A"}, {"B"}, {"M"}),
             2 * sd_information(ind, {"A"}, {"M"}, {"B"}));
    }
  }
  return rb.finish(tol);
}

InequalityReport check_hybrid_lemma(size_t batch, uint64_t seed, double tol) {
  Rng master(seed);
  ReportBuilder rb;
  const std::vector<std::string> names{"A1", "A2", "A3", "T", "B", "Z"};
  const std::vector<size_t> sizes{2, 2, 2, 8, 2, 2};
  auto coord_names = [&](size_t mask) {
    std::vector<std::string> out;
    for (size_t c = 0; c < 3; ++c)
      if (mask & (size_t{1} << c)) out.push_back(names[c]);
    return out;
  };

  for (size_t t = 0; t < batch + 2; ++t) {
    Rng sub = master.substream(t);
    JointDistribution j = JointDistribution::random(names, sizes, sub);
    if (t == batch) {
      // B independent of everything: the left-hand side collapses to 0.
      JointDistribution rest =
          JointDistribution::random({"A1", "A2", "A3", "T", "Z"},
                                    {2, 2, 2, 8, 2}, sub);
      JointDistribution pb = JointDistribution::random({"B"}, {2}, sub);
      std::vector<size_t> ridx;
      for (size_t f = 0; f < rest.cells(); ++f) {
        rest.decode(f, ridx);
        for (size_t b = 0; b < 2; ++b)
          j.at({ridx[0], ridx[1], ridx[2], ridx[3], b, ridx[4]}) =
              rest.probs()[f] * pb.probs()[b];
      }
    } else if (t == batch + 1) {
      // T deterministic given Z: drives the delta term toward 0.
      std::vector<size_t> tz{sub.below(8), sub.below(8)};
      std::vector<size_t> idx;
      for (size_t f = 0; f < j.cells(); ++f) {
        j.decode(f, idx);
        if (idx[3] != tz[idx[5]]) j.probs()[f] = 0;
      }
      j.normalize();
    }

    size_t gmask[2] = {size_t(sub.below(8)), size_t(sub.below(8))};
    JointDistribution zmarg = j.marginal({"Z"});
    double eps = 0, delta = 0, lhs = 0;
    for (size_t z = 0; z < 2; ++z) {
      double pz = zmarg.probs()[z];
      if (pz <= 0) continue;
      JointDistribution sz = j.condition({{"Z", z}});
      auto gnames = coord_names(gmask[z]);

      JointDistribution tmarg = sz.marginal({"T"});
      double ez = 0;
      for (size_t tv = 0; tv < 8; ++tv) {
        double pt = tmarg.probs()[tv];
        if (pt <= 0) continue;
        auto tnames = coord_names(tv);
        if (tnames.empty()) continue;
        ez += pt * mutual_information(sz, tnames, {"B"}, gnames);
      }
      eps += pz * ez;
      delta += pz * sd_information(sz, {"A1", "A2", "A3", "B"}, {"T"});

      // W = (T, A_T) packed as t * 8 + (bits of A restricted to t).
      auto w = [a1 = sz.axis("A1"), a2 = sz.axis("A2"), a3 = sz.axis("A3"),
                tc = sz.axis("T")](const std::vector<size_t>& idx) {
        size_t abits = idx[a1] | (idx[a2] << 1) | (idx[a3] << 2);
        return idx[tc] * 8 + (abits & idx[tc]);
      };
      JointDistribution sw = sz.with_derived_axis("W", 64, w);
      lhs += pz * sd_information(sw, {"W"}, {"B"}, gnames);
    }
    rb.leq("hybrid_decoupling", lhs, 2 * std::sqrt(std::max(eps, 0.0)) +
                                         2 * delta);
  }
  return rb.finish(tol);
}

nlohmann::json InequalityReport::to_json() const {
  nlohmann::json j;
  j["pass"] = pass;
  j["tol"] = tol;
  j["max_violation"] = max_violation;
  j["items"] = nlohmann::json::array();
  for (const auto& it : items)
    j["items"].push_back({{"name", it.name},
                          {"instances", it.instances},
                          {"max_violation", it.max_violation},
                          {"min_slack", it.min_slack}});
  return j;
}

}  // namespace oka
