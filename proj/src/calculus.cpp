#include "nambu/calculus.hpp"

#include <bit>

namespace nambu {

namespace {

std::vector<int> mask_bits(std::uint32_t mask) {
  std::vector<int> v;
  for (int i = 0; mask; ++i, mask >>= 1)
    if (mask & 1) v.push_back(i);
  return v;
}

// Evaluates a tensor on a list of frame (or coframe) indices, in the given
// order: permutation sign times the stored component; 0 on repeats.
ScalarExpr eval_on(const ExteriorTensor& t, std::vector<int> idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return ScalarExpr::zero();
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  std::uint32_t mask = 0;
  for (int i : idx) mask |= 1u << i;
  ScalarExpr c = t.coeff(mask);
  return sign > 0 ? c : -c;
}

void require_variance(const ExteriorTensor& t, Variance v, const char* what) {
  if (t.variance() != v) throw domain_error(std::string(what));
}

ExteriorTensor basis_mono(const AlgebroidPtr& A, Variance v, std::uint32_t mask,
                          const ScalarExpr& coeff) {
  ExteriorTensor t(A, v, std::popcount(mask));
  t.set_coeff(mask, coeff);
  return t;
}

}  // namespace

ScalarExpr anchor_apply(const ExteriorTensor& X, const ScalarExpr& f) {
  require_variance(X, Variance::multivector, "anchor application needs a section");
  if (X.grade() != 1) throw domain_error("anchor application needs grade 1");
  const auto& A = *X.algebroid();
  ScalarExpr r = ScalarExpr::zero();
  for (const auto& [m, c] : X.comps())
    r = r + c * A.anchor_apply_frame(mask_bits(m)[0], f);
  return r;
}

std::vector<ScalarExpr> anchor_components(const ExteriorTensor& X) {
  require_variance(X, Variance::multivector, "anchor image needs a section");
  if (X.grade() != 1) throw domain_error("anchor image needs grade 1");
  const auto& A = *X.algebroid();
  std::vector<ScalarExpr> out(static_cast<std::size_t>(A.dim()), ScalarExpr::zero());
  for (const auto& [m, c] : X.comps()) {
    int i = mask_bits(m)[0];
    for (int a = 0; a < A.dim(); ++a)
      out[a] = out[a] + c * A.anchor[i][a];
  }
  return out;
}

ExteriorTensor section_bracket(const ExteriorTensor& X, const ExteriorTensor& Y) {
  if (!compatible(X.algebroid(), Y.algebroid()))
    throw domain_error("section bracket across different algebroids");
  if (X.grade() != 1 || Y.grade() != 1 ||
      X.variance() != Variance::multivector || Y.variance() != Variance::multivector)
    throw domain_error("section bracket needs two grade-1 multivectors");
  const auto& A = X.algebroid();
  const int m = A->rank;
  ExteriorTensor r(A, Variance::multivector, 1);
  for (int k = 0; k < m; ++k) {
    ScalarExpr z = ScalarExpr::zero();
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        ScalarExpr cij = A->c(i, j, k);
        if (cij.is_zero_expr()) continue;
        z = z + (X.coeff(1u << i) * Y.coeff(1u << j) -
                 X.coeff(1u << j) * Y.coeff(1u << i)) * cij;
      }
    z = z + anchor_apply(X, Y.coeff(1u << k)) - anchor_apply(Y, X.coeff(1u << k));
    r.set_coeff(1u << k, z);
  }
  return r;
}

ExteriorTensor d_A(const ExteriorTensor& alpha) {
  require_variance(alpha, Variance::form, "the differential acts on forms");
  const auto& A = alpha.algebroid();
  const int m = A->rank;
  const int n = alpha.grade();
  ExteriorTensor r(A, Variance::form, n + 1);
  if (n + 1 > m) return r;
  for (std::uint32_t K = 0; K < (1u << m); ++K) {
    if (std::popcount(K) != n + 1) continue;
    std::vector<int> ks = mask_bits(K);
    ScalarExpr coef = ScalarExpr::zero();
    for (int i = 0; i <= n; ++i) {
      ScalarExpr t = A->anchor_apply_frame(ks[i], alpha.coeff(K & ~(1u << ks[i])));
      coef = (i % 2 == 0) ? coef + t : coef - t;
    }
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        std::vector<int> rest;
        for (int t = 0; t <= n; ++t)
          if (t != i && t != j) rest.push_back(ks[t]);
        for (int l = 0; l < m; ++l) {
          ScalarExpr cl = A->c(ks[i], ks[j], l);
          if (cl.is_zero_expr()) continue;
          std::vector<int> idx;
          idx.push_back(l);
          idx.insert(idx.end(), rest.begin(), rest.end());
          ScalarExpr t = cl * eval_on(alpha, idx);
          coef = ((i + j) % 2 == 0) ? coef + t : coef - t;
        }
      }
    r.set_coeff(K, coef);
  }
  return r;
}

ExteriorTensor lie_derivative_form(const ExteriorTensor& X, const ExteriorTensor& alpha) {
  require_variance(alpha, Variance::form, "form Lie derivative acts on forms");
  if (!compatible(X.algebroid(), alpha.algebroid()))
    throw domain_error("Lie derivative across different algebroids");
  if (X.grade() != 1 || X.variance() != Variance::multivector)
    throw domain_error("Lie derivative needs a grade-1 section");
  const auto& A = alpha.algebroid();
  const int m = A->rank;
  const int n = alpha.grade();
  // Bracket of X with each frame section, expanded in the frame.
  std::vector<ExteriorTensor> xb;
  for (int j = 0; j < m; ++j)
    xb.push_back(section_bracket(X, ExteriorTensor::basis(A, Variance::multivector, 1u << j)));
  ExteriorTensor r(A, Variance::form, n);
  for (std::uint32_t K = 0; K < (1u << m); ++K) {
    if (std::popcount(K) != n) continue;
    std::vector<int> ks = mask_bits(K);
    ScalarExpr coef = anchor_apply(X, alpha.coeff(K));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < m; ++l) {
        ScalarExpr w = xb[static_cast<std::size_t>(ks[i])].coeff(1u << l);
        if (w.is_zero_expr()) continue;
        std::vector<int> idx = ks;
        idx[static_cast<std::size_t>(i)] = l;
        coef = coef - w * eval_on(alpha, idx);
      }
    r.set_coeff(K, coef);
  }
  return r;
}

ExteriorTensor lie_derivative_multivector(const ExteriorTensor& X, const ExteriorTensor& P) {
  require_variance(P, Variance::multivector, "multivector Lie derivative");
  if (!compatible(X.algebroid(), P.algebroid()))
    throw domain_error("Lie derivative across different algebroids");
  if (X.grade() != 1 || X.variance() != Variance::multivector)
    throw domain_error("Lie derivative needs a grade-1 section");
  const auto& A = P.algebroid();
  const int m = A->rank;
  const int n = P.grade();
  if (n == 0)
    return ExteriorTensor::scalar(A, Variance::multivector,
                                  anchor_apply(X, P.coeff(0)));
  // Lie derivatives of the coframe, expanded in the coframe.
  std::vector<ExteriorTensor> xc;
  for (int j = 0; j < m; ++j)
    xc.push_back(lie_derivative_form(X, ExteriorTensor::basis(A, Variance::form, 1u << j)));
  ExteriorTensor r(A, Variance::multivector, n);
  for (std::uint32_t K = 0; K < (1u << m); ++K) {
    if (std::popcount(K) != n) continue;
    std::vector<int> ks = mask_bits(K);
    ScalarExpr coef = anchor_apply(X, P.coeff(K));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < m; ++l) {
        ScalarExpr w = xc[static_cast<std::size_t>(ks[i])].coeff(1u << l);
        if (w.is_zero_expr()) continue;
        std::vector<int> idx = ks;
        idx[static_cast<std::size_t>(i)] = l;
        coef = coef - w * eval_on(P, idx);
      }
    r.set_coeff(K, coef);
  }
  return r;
}

namespace {

// Bracket of two multivector monomials f*e_I and g*e_J. Recursion: a grade-1
// left argument is a derivation of the wedge in the right slot; a grade-0
// left argument unfolds through graded antisymmetry factor by factor; higher
// left grades flip the arguments once and decompose what was the left.
ExteriorTensor schouten_mono(const AlgebroidPtr& A, const ScalarExpr& f,
                             std::uint32_t I, const ScalarExpr& g,
                             std::uint32_t J) {
  const int p = std::popcount(I);
  const int q = std::popcount(J);
  if (p == 1) {
    int i = mask_bits(I)[0];
    if (q == 0)
      return ExteriorTensor::scalar(A, Variance::multivector,
                                    f * A->anchor_apply_frame(i, g));
    std::uint32_t j1 = J & (~J + 1);
    if (q == 1) {
      int j = mask_bits(j1)[0];
      // [f e_i, g e_j] = f g [e_i,e_j] + f (rho(e_i) g) e_j - g (rho(e_j) f) e_i
      ExteriorTensor r(A, Variance::multivector, 1);
      for (int k = 0; k < A->rank; ++k) {
        ScalarExpr z = f * g * A->c(i, j, k);
        if (k == j) z = z + f * A->anchor_apply_frame(i, g);
        if (k == i) z = z - g * A->anchor_apply_frame(j, f);
        r.set_coeff(1u << k, r.coeff(1u << k) + z);
      }
      return r;
    }
    ExteriorTensor rest = ExteriorTensor::basis(A, Variance::multivector, J & ~j1);
    ExteriorTensor left = wedge(schouten_mono(A, f, I, g, j1), rest);
    ExteriorTensor right = wedge(basis_mono(A, Variance::multivector, j1, g),
                                 schouten_mono(A, f, I, ScalarExpr::one(), J & ~j1));
    return left + right;
  }
  if (p == 0) {
    if (q == 0) return ExteriorTensor::scalar(A, Variance::multivector, ScalarExpr::zero());
    std::uint32_t j1 = J & (~J + 1);
    int j = mask_bits(j1)[0];
    // [f, Y ^ R] = (-rho(Y) f) ^ R - Y ^ [f, R]
    ExteriorTensor left = scalar_mul(-(g * A->anchor_apply_frame(j, f)),
                                     ExteriorTensor::basis(A, Variance::multivector, J & ~j1));
    ExteriorTensor right = wedge(basis_mono(A, Variance::multivector, j1, g),
                                 schouten_mono(A, f, 0, ScalarExpr::one(), J & ~j1));
    return left - right;
  }
  // p >= 2: flip and decompose the first factor of what was the left.
  std::uint32_t i1 = I & (~I + 1);
  ExteriorTensor t1 = schouten_mono(A, g, J, f, i1);
  ExteriorTensor t2 = schouten_mono(A, g, J, ScalarExpr::one(), I & ~i1);
  ExteriorTensor ba = wedge(t1, ExteriorTensor::basis(A, Variance::multivector, I & ~i1));
  ExteriorTensor second = wedge(basis_mono(A, Variance::multivector, i1, f), t2);
  ba = (q % 2 == 0) ? ba - second : ba + second;  // sign (-1)^{q-1}
  // [a,b] = -(-1)^{(p-1)(q-1)} [b,a]
  bool negate = ((p - 1) * (q - 1)) % 2 == 0;
  return negate ? -ba : ba;
}

}  // namespace

ExteriorTensor schouten(const ExteriorTensor& P, const ExteriorTensor& Q) {
  if (!compatible(P.algebroid(), Q.algebroid()))
    throw domain_error("bracket across different algebroids");
  if (P.variance() != Variance::multivector || Q.variance() != Variance::multivector)
    throw domain_error("the Gerstenhaber bracket acts on multivectors");
  const auto& A = P.algebroid();
  int g = P.grade() + Q.grade() - 1;
  ExteriorTensor r(A, Variance::multivector, g < 0 ? 0 : g);
  for (const auto& [mi, ci] : P.comps())
    for (const auto& [mj, cj] : Q.comps())
      r = r + schouten_mono(A, ci, mi, cj, mj);
  return r;
}

ExteriorTensor generalized_lie_derivative(const ExteriorTensor& P, const ExteriorTensor& alpha) {
  require_variance(alpha, Variance::form, "generalized Lie derivative acts on forms");
  require_variance(P, Variance::multivector, "generalized Lie derivative needs a multivector");
  ExteriorTensor first = contract_by_section(P, d_A(alpha));
  ExteriorTensor second = d_A(contract_by_section(P, alpha));
  return (P.grade() % 2 == 0) ? first - second : first + second;
}

ExteriorTensor anchor_pushforward(const ExteriorTensor& P, const AlgebroidPtr& tangent) {
  require_variance(P, Variance::multivector, "pushforward acts on multivectors");
  const auto& A = *P.algebroid();
  if (tangent->chart->coords != A.chart->coords)
    throw domain_error("pushforward target lives on a different chart");
  ExteriorTensor r(tangent, Variance::multivector, P.grade());
  for (const auto& [m, c] : P.comps()) {
    ExteriorTensor term = ExteriorTensor::scalar(tangent, Variance::multivector, c);
    for (int i : mask_bits(m)) {
      ExteriorTensor row(tangent, Variance::multivector, 1);
      for (int a = 0; a < A.dim(); ++a)
        row.set_coeff(1u << a, A.anchor[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]);
      term = wedge(term, row);
    }
    r = r + term;
  }
  return r;
}

ExteriorTensor anchor_pullback(const ExteriorTensor& beta, const AlgebroidPtr& A) {
  require_variance(beta, Variance::form, "pullback acts on forms");
  if (beta.algebroid()->chart->coords != A->chart->coords)
    throw domain_error("pullback source lives on a different chart");
  ExteriorTensor r(A, Variance::form, beta.grade());
  for (const auto& [m, c] : beta.comps()) {
    ExteriorTensor term = ExteriorTensor::scalar(A, Variance::form, c);
    for (int a : mask_bits(m)) {
      ExteriorTensor row(A, Variance::form, 1);
      for (int i = 0; i < A->rank; ++i)
        row.set_coeff(1u << i, A->anchor[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)]);
      term = wedge(term, row);
    }
    r = r + term;
  }
  return r;
}

AlgebroidPtr cotangent_algebroid_of_poisson(const ExteriorTensor& pi) {
  require_variance(pi, Variance::multivector, "a Poisson structure is a bivector");
  if (pi.grade() != 2) throw domain_error("a Poisson structure has grade 2");
  const auto& base = pi.algebroid();
  if (!compatible(base, tangent_algebroid(base->chart)))
    throw domain_error("the Poisson bivector must live on a tangent algebroid");
  ExteriorTensor self = schouten(pi, pi);
  if (!self.is_zero_tensor())
    throw domain_error("the bivector is not Poisson: nonzero self-bracket " +
                       to_string(self));
  const int m = base->rank;
  const Chart& chart = *base->chart;
  auto pi_at = [&](int i, int a) {
    if (i == a) return ScalarExpr::zero();
    bool flip = i > a;
    if (flip) std::swap(i, a);
    ScalarExpr v = pi.coeff((1u << i) | (1u << a));
    return flip ? -v : v;
  };
  auto A = std::make_shared<AlgebroidPresentation>();
  A->chart = base->chart;
  A->rank = m;
  for (int i = 0; i < m; ++i) A->frame.push_back("d" + chart.coords[static_cast<std::size_t>(i)]);
  A->anchor.assign(m, std::vector<ScalarExpr>(m, ScalarExpr::zero()));
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < m; ++a) A->anchor[i][a] = pi_at(i, a);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      std::vector<ScalarExpr> row;
      bool nonzero = false;
      for (int k = 0; k < m; ++k) {
        ScalarExpr v = partial(pi_at(i, j), chart, k);
        if (!v.is_zero_expr()) nonzero = true;
        row.push_back(v);
      }
      if (nonzero) A->structure.emplace(std::make_pair(i, j), std::move(row));
    }
  A->symbols = base->symbols;
  VerificationReport rep = validate_axioms(A);
  if (!rep.passed())
    throw internal_error("cotangent presentation of a Poisson bivector failed validation:\n" +
                         render_text(rep));
  return A;
}

}  // namespace nambu
