#include "oka/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace oka {

namespace {

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a, sum = 1.0 / a, del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1 - a, c = 1 / tiny, d = 1 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -double(i) * (double(i) - a);
    b += 2;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (a <= 0 || x < 0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0) return 1.0;
  if (x < a + 1) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi_square_sf(double x, size_t dof) {
  if (dof == 0) throw std::invalid_argument("chi_square_sf: dof >= 1");
  return gamma_q(double(dof) / 2.0, x / 2.0);
}

double chi_square_independence(
    const std::vector<std::vector<size_t>>& table) {
  std::vector<double> row_tot, col_tot;
  double total = 0;
  size_t cols = 0;
  for (const auto& row : table) cols = std::max(cols, row.size());
  col_tot.assign(cols, 0);
  for (const auto& row : table) {
    double rt = 0;
    for (size_t c = 0; c < row.size(); ++c) {
      rt += double(row[c]);
      col_tot[c] += double(row[c]);
    }
    row_tot.push_back(rt);
    total += rt;
  }
  size_t r_eff = 0, c_eff = 0;
  for (double r : row_tot)
    if (r > 0) ++r_eff;
  for (double c : col_tot)
    if (c > 0) ++c_eff;
  if (r_eff < 2 || c_eff < 2 || total <= 0) return 1.0;

  double stat = 0;
  for (size_t r = 0; r < table.size(); ++r) {
    if (row_tot[r] <= 0) continue;
    for (size_t c = 0; c < table[r].size(); ++c) {
      if (col_tot[c] <= 0) continue;
      double expect = row_tot[r] * col_tot[c] / total;
      double diff = double(table[r][c]) - expect;
      stat += diff * diff / expect;
    }
  }
  return chi_square_sf(stat, (r_eff - 1) * (c_eff - 1));
}

double chi_square_uniform(const std::vector<size_t>& counts) {
  if (counts.size() < 2)
    throw std::invalid_argument("chi_square_uniform: need >= 2 cells");
  double total = 0;
  for (size_t c : counts) total += double(c);
  if (total <= 0) return 1.0;
  double expect = total / double(counts.size());
  double stat = 0;
  for (size_t c : counts) {
    double diff = double(c) - expect;
    stat += diff * diff / expect;
  }
  return chi_square_sf(stat, counts.size() - 1);
}

double runs_test(const std::vector<int>& bits) {
  size_t n = bits.size();
  if (n < 2) return 1.0;
  double n1 = 0, n2 = 0, runs = 1;
  for (size_t i = 0; i < n; ++i) {
    (bits[i] ? n1 : n2) += 1;
    if (i > 0 && (bits[i] != 0) != (bits[i - 1] != 0)) runs += 1;
  }
  if (n1 == 0 || n2 == 0) return 1.0;
  double nn = n1 + n2;
  double mu = 2 * n1 * n2 / nn + 1;
  double var = 2 * n1 * n2 * (2 * n1 * n2 - nn) / (nn * nn * (nn - 1));
  if (var <= 0) return 1.0;
  double z = (runs - mu) / std::sqrt(var);
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

}  // namespace oka
