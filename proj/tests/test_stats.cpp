#include "doctest.h"

#include <cmath>

#include "oka/rng.hpp"
#include "oka/stats.hpp"

using namespace oka;

TEST_CASE("incomplete gamma special cases") {
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.0}) {
    CHECK(gamma_q(1.0, x) == doctest::Approx(std::exp(-x)).epsilon(1e-10));
  }
  CHECK(gamma_q(2.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("chi-square survival function closed forms") {
  for (double x : {0.2, 1.0, 3.0, 8.0}) {
    CHECK(chi_square_sf(x, 2) ==
          doctest::Approx(std::exp(-x / 2)).epsilon(1e-10));
    CHECK(chi_square_sf(x, 1) ==
          doctest::Approx(std::erfc(std::sqrt(x / 2))).epsilon(1e-8));
  }
  CHECK(chi_square_sf(0.0, 5) == doctest::Approx(1.0));
}

TEST_CASE("uniform goodness of fit") {
  CHECK(chi_square_uniform({250, 250, 250, 250}) == doctest::Approx(1.0));
  CHECK(chi_square_uniform({251, 249, 250, 250}) > 0.9);
  CHECK(chi_square_uniform({900, 40, 30, 30}) < 1e-12);
}

TEST_CASE("independence test on contingency tables") {
  // Independent rows: identical conditional distributions.
  std::vector<std::vector<size_t>> ind{{100, 200}, {50, 100}};
  CHECK(chi_square_independence(ind) > 0.9);
  std::vector<std::vector<size_t>> dep{{200, 0}, {0, 200}};
  CHECK(chi_square_independence(dep) < 1e-12);
  // Zero rows and columns are dropped, not counted as evidence.
  std::vector<std::vector<size_t>> holes{{100, 0, 200}, {0, 0, 0}, {50, 0, 100}};
  CHECK(chi_square_independence(holes) > 0.9);
}

TEST_CASE("runs test detects serial structure") {
  std::vector<int> alt, same;
  for (int i = 0; i < 200; ++i) {
    alt.push_back(i & 1);
    same.push_back(1);
  }
  CHECK(runs_test(alt) < 1e-6);
  CHECK(runs_test(same) == doctest::Approx(1.0));
  Rng rng(4);
  std::vector<int> random;
  for (int i = 0; i < 500; ++i) random.push_back(int(rng.u64() & 1));
  CHECK(runs_test(random) > 1e-3);
}
