#include "nambu/random_inputs.hpp"

#include <bit>

namespace nambu {

Rational RandomGen::rational(int bound) {
  long long num = static_cast<long long>(next(static_cast<std::uint64_t>(2 * bound))) - bound;
  if (num >= 0) ++num;
  long long den = 1 + static_cast<long long>(next(2));
  return Rational(num, den);
}

ScalarExpr random_scalar(RandomGen& g, const ChartPtr& chart,
                         const std::vector<std::string>& symbols,
                         int max_terms) {
  const int d = chart->dim();
  int terms = 1 + static_cast<int>(g.next(static_cast<std::uint64_t>(max_terms)));
  ScalarExpr r = ScalarExpr::zero();
  for (int t = 0; t < terms; ++t) {
    ScalarExpr m = ScalarExpr::rational(g.rational(3));
    if (d > 0) {
      int factors = static_cast<int>(g.next(3));
      for (int f = 0; f < factors; ++f) {
        int i = static_cast<int>(g.next(static_cast<std::uint64_t>(d)));
        m = m * ScalarExpr::coordinate(*chart, i);
      }
      if (g.next(4) == 0) {
        int i = static_cast<int>(g.next(static_cast<std::uint64_t>(d)));
        m = m * exp(ScalarExpr::coordinate(*chart, i));
      }
    }
    if (!symbols.empty() && g.next(4) == 0) {
      std::size_t i = g.next(symbols.size());
      m = m * ScalarExpr::symbol(symbols[i]);
    }
    r = r + m;
  }
  return r;
}

ExteriorTensor random_tensor(RandomGen& g, const AlgebroidPtr& A, Variance v,
                             int grade, int max_terms) {
  ExteriorTensor r(A, v, grade);
  std::vector<std::string> syms(A->symbols.begin(), A->symbols.end());
  const std::uint32_t top = 1u << A->rank;
  int placed = 0;
  for (std::uint32_t mask = 0; mask < top; ++mask) {
    if (std::popcount(mask) != grade) continue;
    if (g.next(2) == 0) continue;
    r.set_coeff(mask, random_scalar(g, A->chart, syms, max_terms));
    ++placed;
  }
  if (placed == 0) {
    // Guarantee at least one component so property runs exercise something.
    for (std::uint32_t mask = 0; mask < top; ++mask) {
      if (std::popcount(mask) != grade) continue;
      r.set_coeff(mask, random_scalar(g, A->chart, syms, max_terms));
      break;
    }
  }
  return r;
}

}  // namespace nambu
