#pragma once

#include <cstddef>
#include <vector>

namespace oka {

// Regularized upper incomplete gamma Q(a, x); survival function machinery
// for the chi-square distribution.
double gamma_q(double a, double x);

// P[Chi2_dof >= x].
double chi_square_sf(double x, size_t dof);

// Pearson independence test on an r x c contingency table of counts.
// Returns the p-value; dof = (r-1)(c-1). Rows/columns with zero totals are
// dropped first.
double chi_square_independence(const std::vector<std::vector<size_t>>& table);

// Goodness-of-fit of counts against a uniform distribution over the cells.
double chi_square_uniform(const std::vector<size_t>& counts);

// Wald-Wolfowitz runs test on a binary sequence; two-sided p-value under the
// normal approximation. Sequences that are all one symbol return p = 1.
double runs_test(const std::vector<int>& bits);

}  // namespace oka
