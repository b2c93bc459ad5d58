#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "oka/oracle.hpp"  // parameter_error
#include "oka/rng.hpp"

namespace oka {

// Exact distribution over a product of named finite alphabets. All
// information quantities below are computed from dense tables, never from
// samples. Logarithms are base 2 throughout.
class JointDistribution {
 public:
  JointDistribution(std::vector<std::string> axis_names,
                    std::vector<size_t> sizes);

  const std::vector<std::string>& axis_names() const { return names_; }
  const std::vector<size_t>& sizes() const { return sizes_; }
  size_t cells() const { return probs_.size(); }
  std::vector<double>& probs() { return probs_; }
  const std::vector<double>& probs() const { return probs_; }

  size_t index_of(const std::vector<size_t>& idx) const;
  void decode(size_t flat, std::vector<size_t>& idx) const;
  double& at(const std::vector<size_t>& idx) { return probs_[index_of(idx)]; }
  double at(const std::vector<size_t>& idx) const {
    return probs_[index_of(idx)];
  }

  size_t axis(const std::string& name) const;  // throws on unknown name
  void normalize();
  void check_normalized(double tol = 1e-12) const;

  // Marginal over the named axes, in the given order.
  JointDistribution marginal(const std::vector<std::string>& keep) const;

  // Conditions on fixed axis values; the fixed axes are dropped and the rest
  // renormalized. The conditioning event must have positive probability.
  JointDistribution condition(
      const std::vector<std::pair<std::string, size_t>>& fixed) const;

  // Appends a deterministic axis computed from the existing coordinates.
  JointDistribution with_derived_axis(
      const std::string& name, size_t new_size,
      const std::function<size_t(const std::vector<size_t>&)>& f) const;

  // Uniform Dirichlet(1,...,1) table; entries floored at `floor_mass` and
  // renormalized so ratios stay finite.
  static JointDistribution random(std::vector<std::string> axis_names,
                                  std::vector<size_t> sizes, Rng& rng,
                                  double floor_mass = 1e-6);

 private:
  std::vector<std::string> names_;
  std::vector<size_t> sizes_;
  std::vector<double> probs_;
};

// 1/2 L1 distance between tables of identical shape.
double statistical_distance(const JointDistribution& p,
                            const JointDistribution& q);

// max_S (P[S] - Q[S]) by explicit subset enumeration; alphabet size <= 20.
double max_event_gap(const JointDistribution& p, const JointDistribution& q);

// sum_b Q(b) f(P(b)/Q(b)); requires f(1) = 0 and supp(P) within supp(Q).
double f_divergence(const std::function<double(double)>& f,
                    const JointDistribution& p, const JointDistribution& q);

double kl_divergence(const JointDistribution& p, const JointDistribution& q);

double entropy(const JointDistribution& dist);
double conditional_entropy(const JointDistribution& joint,
                           const std::vector<std::string>& target,
                           const std::vector<std::string>& given);

double mutual_information(const JointDistribution& joint,
                          const std::vector<std::string>& g1,
                          const std::vector<std::string>& g2,
                          const std::vector<std::string>& given = {});

// I_SD: statistical distance between the (g1,g2)-marginal and the product of
// the g1- and g2-marginals; conditional form averages over the given axes.
double sd_information(const JointDistribution& joint,
                      const std::vector<std::string>& g1,
                      const std::vector<std::string>& g2,
                      const std::vector<std::string>& given = {});

struct InequalityReport {
  struct Item {
    std::string name;
    size_t instances = 0;
    double max_violation = 0;  // max over instances of lhs - rhs (0 if none)
    double min_slack = 0;      // min over instances of rhs - lhs
  };
  std::vector<Item> items;
  double max_violation = 0;
  bool pass = false;
  double tol = 0;

  nlohmann::json to_json() const;
};

// Certifies the information-theoretic toolbox on random Dirichlet joints plus
// deterministic corner cases. Every listed inequality is a theorem, so any
// violation beyond tol indicates an implementation bug.
InequalityReport check_inequalities(size_t batch, size_t max_alphabet,
                                    uint64_t seed, double tol);

// Certifies the hybrid-decoupling bound: over joints of (A in {0,1}^3,
// T subset of [3], B, Z binary) with a random g : Z -> subsets of [3],
// E[SD((A_T,T,B), (A_T,T) x B | z, a_g(z))] <= 2 sqrt(eps) + 2 delta.
InequalityReport check_hybrid_lemma(size_t batch, uint64_t seed, double tol);

}  // namespace oka
