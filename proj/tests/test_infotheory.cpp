#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "oka/infotheory.hpp"

using namespace oka;

namespace {

JointDistribution bern(double p) {
  JointDistribution d({"X"}, {2});
  d.probs() = {1 - p, p};
  return d;
}

const InequalityReport::Item* find_item(const InequalityReport& rep,
                                        const std::string& name) {
  for (const auto& it : rep.items)
    if (it.name == name) return &it;
  return nullptr;
}

double tlog2t(double t) { return t <= 0 ? 0.0 : t * std::log2(t); }

}  // namespace

TEST_CASE("statistical distance basics") {
  JointDistribution p = bern(0.5);
  CHECK(statistical_distance(p, p) == 0.0);
  JointDistribution a({"X"}, {2}), b({"X"}, {2});
  a.probs() = {1, 0};
  b.probs() = {0, 1};
  CHECK(statistical_distance(a, b) == doctest::Approx(1.0));
  CHECK(statistical_distance(bern(0.5), bern(0.25)) == doctest::Approx(0.25));
}

TEST_CASE("f-divergences recover KL and statistical distance") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    JointDistribution p = JointDistribution::random({"X"}, {5}, rng);
    JointDistribution q = JointDistribution::random({"X"}, {5}, rng);
    CHECK(std::abs(f_divergence(tlog2t, p, p)) < 1e-12);
    CHECK(std::abs(f_divergence(tlog2t, p, q) - kl_divergence(p, q)) < 1e-9);
    CHECK(std::abs(f_divergence([](double t) { return std::abs(t - 1) / 2; },
                                p, q) -
                   statistical_distance(p, q)) < 1e-9);
  }
}

TEST_CASE("KL of half vs quarter coin") {
  double expect = 0.5 + 0.5 * std::log2(2.0 / 3.0);
  double got = kl_divergence(bern(0.5), bern(0.25));
  CHECK(std::abs(got - expect) < 1e-9);
  CHECK(got == doctest::Approx(0.2075187496).epsilon(1e-4));
}

TEST_CASE("f-divergence preconditions") {
  JointDistribution p = bern(0.5), q = bern(0.25);
  CHECK_THROWS_AS(f_divergence([](double t) { return t; }, p, q),
                  parameter_error);
  JointDistribution zero({"X"}, {2});
  zero.probs() = {1, 0};
  CHECK_THROWS_AS(kl_divergence(bern(0.5), zero), parameter_error);
}

TEST_CASE("entropy values and chain rule") {
  JointDistribution point({"X"}, {4});
  point.probs() = {0, 0, 1, 0};
  CHECK(entropy(point) == doctest::Approx(0.0));
  JointDistribution uni({"X"}, {8});
  uni.probs().assign(8, 1.0 / 8);
  CHECK(entropy(uni) == doctest::Approx(3.0));
  Rng rng(5);
  JointDistribution j =
      JointDistribution::random({"X", "Y", "Z"}, {3, 2, 4}, rng);
  double lhs = entropy(j);
  double rhs = entropy(j.marginal({"X"})) +
               conditional_entropy(j, {"Y"}, {"X"}) +
               conditional_entropy(j, {"Z"}, {"X", "Y"});
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

TEST_CASE("mutual information extremes") {
  JointDistribution ind({"X", "Y"}, {2, 3});
  for (size_t x = 0; x < 2; ++x)
    for (size_t y = 0; y < 3; ++y) ind.at({x, y}) = 0.5 * (1.0 / 3);
  CHECK(std::abs(mutual_information(ind, {"X"}, {"Y"})) < 1e-9);
  CHECK(std::abs(sd_information(ind, {"X"}, {"Y"})) < 1e-9);
  JointDistribution cop({"X", "Y"}, {2, 2});
  cop.at({0, 0}) = 0.5;
  cop.at({1, 1}) = 0.5;
  CHECK(mutual_information(cop, {"X"}, {"Y"}) == doctest::Approx(1.0));
}

TEST_CASE("conditional information averages the slice informations") {
  Rng rng(9);
  JointDistribution j =
      JointDistribution::random({"X", "Y", "Z"}, {3, 3, 3}, rng);
  double direct = mutual_information(j, {"X"}, {"Y"}, {"Z"});
  JointDistribution mz = j.marginal({"Z"});
  double avg = 0;
  for (size_t z = 0; z < 3; ++z) {
    JointDistribution slice = j.condition({{"Z", z}});
    avg += mz.at({z}) * mutual_information(slice, {"X"}, {"Y"});
  }
  CHECK(std::abs(direct - avg) < 1e-9);
}

TEST_CASE("maximal event gap equals statistical distance") {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    JointDistribution p = JointDistribution::random({"X"}, {12}, rng);
    JointDistribution q = JointDistribution::random({"X"}, {12}, rng);
    CHECK(max_event_gap(p, q) ==
          doctest::Approx(statistical_distance(p, q)).epsilon(1e-9));
  }
}

TEST_CASE("marginals, symmetry and ranges") {
  Rng rng(13);
  JointDistribution j = JointDistribution::random({"X", "Y"}, {4, 4}, rng);
  JointDistribution mx = j.marginal({"X"});
  double sum = 0;
  for (double v : mx.probs()) sum += v;
  CHECK(sum == doctest::Approx(1.0));
  CHECK(mutual_information(j, {"X"}, {"Y"}) ==
        doctest::Approx(mutual_information(j, {"Y"}, {"X"})));
  CHECK(mutual_information(j, {"X"}, {"Y"}) >= -1e-12);
  JointDistribution k = JointDistribution::random({"X", "Y"}, {4, 4}, rng);
  double sd = statistical_distance(j, k);
  CHECK(sd >= 0.0);
  CHECK(sd <= 1.0);
}

TEST_CASE("conditioning and axis lookups validate their inputs") {
  JointDistribution j({"X", "Y"}, {2, 2});
  j.at({0, 0}) = 1.0;
  CHECK_THROWS_AS(j.condition({{"Y", 1}}), parameter_error);
  CHECK_THROWS_AS(j.axis("W"), parameter_error);
  CHECK_THROWS_AS(j.marginal({"Q"}), parameter_error);
}

TEST_CASE("the inequality battery passes and covers the toolbox") {
  InequalityReport rep = check_inequalities(60, 4, 17, 1e-9);
  CHECK(rep.pass);
  CHECK(rep.max_violation <= 1e-9);
  for (const char* name :
       {"pinsker", "information_nonneg", "information_upper",
        "data_processing_information", "data_processing_entropy",
        "cond_add_lower", "cond_add_upper", "sd_chain_rule", "sd_cond_add",
        "sd_var_rep", "indicator_chain_rule", "entropy_chain_rule",
        "indicator_entropy", "sd_data_processing", "sd_expectation",
        "sd_remove_product", "sd_var_rep_indep"}) {
    const auto* it = find_item(rep, name);
    REQUIRE_MESSAGE(it != nullptr, name);
    CHECK(it->instances >= 60);
  }
  CHECK_THROWS_AS(check_inequalities(10, 5, 1, 1e-9), parameter_error);
  CHECK_THROWS_AS(check_inequalities(10, 1, 1, 1e-9), parameter_error);
}

TEST_CASE("the hybrid decoupling bound holds on random joints") {
  InequalityReport rep = check_hybrid_lemma(25, 19, 1e-9);
  CHECK(rep.pass);
  CHECK(find_item(rep, "hybrid_decoupling") != nullptr);
  nlohmann::json j = rep.to_json();
  CHECK(j.contains("items"));
  CHECK(j.at("pass").get<bool>());
}
