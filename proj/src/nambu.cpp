#include "nambu/nambu.hpp"

#include <bit>

namespace nambu {

namespace {

constexpr const char* kWeight = "_w";

// Residual of the defining condition at a given argument form.
ExteriorTensor nambu_residual(const ExteriorTensor& pi, const ExteriorTensor& alpha) {
  const int n = pi.grade();
  ExteriorTensor lhs = lie_derivative_multivector(contract_by_form(alpha, pi), pi);
  ScalarExpr pair = contract_by_form(d_A(alpha), pi).scalar_value();
  ExteriorTensor rhs = scalar_mul(pair, pi);
  return (n % 2 == 0) ? lhs - rhs : lhs + rhs;
}

// Substitution candidates for concretizing a failing weighted argument:
// constants first, then coordinates, then quadratic monomials.
std::vector<ScalarExpr> weight_candidates(const ChartPtr& chart) {
  std::vector<ScalarExpr> out;
  out.push_back(ScalarExpr::one());
  const int d = chart->dim();
  for (int i = 0; i < d; ++i) out.push_back(ScalarExpr::coordinate(*chart, i));
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j)
      out.push_back(ScalarExpr::coordinate(*chart, i) * ScalarExpr::coordinate(*chart, j));
  return out;
}

}  // namespace

NambuStructure::NambuStructure(ExteriorTensor pi, bool allow_order_2)
    : pi_(std::move(pi)) {
  if (pi_.variance() != Variance::multivector)
    throw domain_error("a Nambu candidate is a multivector");
  const int n = pi_.grade();
  const int m = pi_.algebroid()->rank;
  if (n > m) throw domain_error("order exceeds the rank");
  if (n < 2 || (n == 2 && !allow_order_2))
    throw domain_error(
        "order must be at least 3; order 2 is an experiment behind an explicit flag");
}

ExteriorTensor sharp(const NambuStructure& P, const ExteriorTensor& alpha) {
  if (alpha.grade() != P.order() - 1)
    throw domain_error("sharp takes forms of grade one below the order");
  return contract_by_form(alpha, P.tensor());
}

VerificationReport check_nambu(NambuStructure& P) {
  const auto& A = P.algebroid();
  const ExteriorTensor& pi = P.tensor();
  const int m = A->rank;
  const int n = P.order();
  VerificationReport rep;
  rep.name = "defining condition, order " + std::to_string(n);
  bool all_pass = true;
  for (std::uint32_t omega = 0; omega < (1u << m); ++omega) {
    if (std::popcount(omega) != n - 1) continue;
    ExteriorTensor basis = ExteriorTensor::basis(A, Variance::form, omega);
    ExteriorTensor alpha = scalar_mul(ScalarExpr::symbol(kWeight), basis);
    ExteriorTensor residual = nambu_residual(pi, alpha);
    CheckItem item{"argument " + basis_name(*A, Variance::form, omega),
                   CheckStatus::pass,
                   {},
                   ""};
    if (!residual.is_zero_tensor()) {
      all_pass = false;
      item.status = CheckStatus::fail;
      // Concretize: replace the symbolic weight by small polynomials until
      // the residual survives.
      bool concrete = false;
      for (const ScalarExpr& w : weight_candidates(A->chart)) {
        ExteriorTensor calpha = scalar_mul(w, basis);
        ExteriorTensor cres = nambu_residual(pi, calpha);
        if (!cres.is_zero_tensor()) {
          item.witnesses.push_back(
              {"alpha = " + to_string(calpha), to_string(cres)});
          if (P.status() != NambuStatus::refuted)
            P.mark_refuted({calpha, cres});
          concrete = true;
          break;
        }
      }
      if (!concrete) {
        item.witnesses.push_back({"alpha = " + to_string(alpha), to_string(residual)});
        if (P.status() != NambuStatus::refuted) P.mark_refuted({alpha, residual});
      }
    }
    rep.add(item);
  }
  rep.note = "weighted basis sweep; exhaustive over smooth coefficients";
  if (all_pass) P.mark_verified();
  return rep;
}

VerificationReport check_wade(const NambuStructure& P) {
  const auto& A = P.algebroid();
  const ExteriorTensor& pi = P.tensor();
  const int m = A->rank;
  const int n = P.order();
  VerificationReport rep;
  rep.name = "bracket-side condition, order " + std::to_string(n);
  for (std::uint32_t omega = 0; omega < (1u << m); ++omega) {
    if (std::popcount(omega) != n - 1) continue;
    ExteriorTensor alpha = scalar_mul(
        ScalarExpr::symbol(kWeight), ExteriorTensor::basis(A, Variance::form, omega));
    ExteriorTensor bracket_part =
        schouten(contract_by_form(alpha, pi), pi);
    ExteriorTensor da = d_A(alpha);
    CheckItem item{"argument " + basis_name(*A, Variance::form, omega),
                   CheckStatus::pass,
                   {},
                   ""};
    for (std::uint32_t bmask = 0; bmask < (1u << m); ++bmask) {
      if (std::popcount(bmask) != n - 1) continue;
      ExteriorTensor beta = ExteriorTensor::basis(A, Variance::form, bmask);
      ExteriorTensor lhs = contract_by_form(beta, bracket_part);
      ExteriorTensor rhs =
          contract_by_form(contract_by_section(contract_by_form(beta, pi), da), pi);
      ExteriorTensor residual = lhs + rhs;
      if (!residual.is_zero_tensor()) {
        item.status = CheckStatus::fail;
        item.witnesses.push_back(
            {"alpha = " + to_string(alpha) + ", beta = " + to_string(beta),
             to_string(residual)});
      }
    }
    rep.add(item);
  }
  rep.note = "weighted basis sweep; exhaustive over smooth coefficients";
  return rep;
}

VerificationReport check_pointwise_decomposability(const NambuStructure& P) {
  const auto& A = P.algebroid();
  const ExteriorTensor& pi = P.tensor();
  const int m = A->rank;
  const int n = P.order();
  VerificationReport rep;
  rep.name = "pointwise decomposability";
  for (std::uint32_t gmask = 0; gmask < (1u << m); ++gmask) {
    if (std::popcount(gmask) != n - 1) continue;
    ExteriorTensor gamma = ExteriorTensor::basis(A, Variance::form, gmask);
    ExteriorTensor w = wedge(contract_by_form(gamma, pi), pi);
    CheckItem item{"argument " + basis_name(*A, Variance::form, gmask),
                   CheckStatus::pass,
                   {},
                   ""};
    if (!w.is_zero_tensor()) {
      item.status = CheckStatus::fail;
      item.witnesses.push_back({"gamma = " + to_string(gamma), to_string(w)});
    }
    rep.add(item);
  }
  return rep;
}

NambuStructure subordinate(const NambuStructure& P,
                           const std::vector<ExteriorTensor>& alphas) {
  if (P.status() != NambuStatus::verified)
    throw domain_error("subordinate structures need a verified parent");
  const int n = P.order();
  const int k = static_cast<int>(alphas.size());
  if (n - k < 3) throw domain_error("subordinate order would drop below 3");
  ExteriorTensor bar = ExteriorTensor::scalar(P.algebroid(), Variance::form,
                                              ScalarExpr::one());
  for (const ExteriorTensor& a : alphas) {
    if (a.grade() != 1 || a.variance() != Variance::form)
      throw domain_error("subordinate arguments are grade-1 forms");
    if (!d_A(a).is_zero_tensor())
      throw domain_error("subordinate arguments must be closed: " + to_string(a));
    bar = wedge(bar, a);
  }
  NambuStructure sub(contract_by_form(bar, P.tensor()));
  sub.mark_verified();
  return sub;
}

ExteriorTensor hamiltonian_section(const NambuStructure& P,
                                   const std::vector<ScalarExpr>& fs) {
  if (static_cast<int>(fs.size()) != P.order() - 1)
    throw domain_error("a Hamiltonian section needs order-minus-one functions");
  const auto& A = P.algebroid();
  ExteriorTensor alpha = ExteriorTensor::scalar(A, Variance::form, ScalarExpr::one());
  for (const ScalarExpr& f : fs)
    alpha = wedge(alpha, d_A(ExteriorTensor::scalar(A, Variance::form, f)));
  return sharp(P, alpha);
}

ScalarExpr induced_base_bracket(const NambuStructure& P,
                                const std::vector<ScalarExpr>& fs) {
  if (static_cast<int>(fs.size()) != P.order())
    throw domain_error("the induced bracket takes order-many functions");
  const auto& A = P.algebroid();
  ExteriorTensor alpha = ExteriorTensor::scalar(A, Variance::form, ScalarExpr::one());
  for (const ScalarExpr& f : fs)
    alpha = wedge(alpha, d_A(ExteriorTensor::scalar(A, Variance::form, f)));
  return pairing(P.tensor(), alpha);
}

VerificationReport fundamental_identity_check(const NambuStructure& P,
                                              const std::vector<ScalarExpr>& fs,
                                              const std::vector<ScalarExpr>& gs) {
  const int n = P.order();
  if (static_cast<int>(fs.size()) != n - 1 || static_cast<int>(gs.size()) != n)
    throw domain_error("the fundamental identity takes order-minus-one and "
                       "order-many functions");
  VerificationReport rep;
  rep.name = "fundamental identity of the induced bracket";
  std::vector<ScalarExpr> outer = fs;
  outer.push_back(induced_base_bracket(P, gs));
  ScalarExpr lhs = induced_base_bracket(P, outer);
  ScalarExpr rhs;
  for (int i = 0; i < n; ++i) {
    std::vector<ScalarExpr> inner = fs;
    inner.push_back(gs[i]);
    std::vector<ScalarExpr> args = gs;
    args[i] = induced_base_bracket(P, inner);
    rhs = rhs + induced_base_bracket(P, args);
  }
  ScalarExpr residual = lhs - rhs;
  CheckItem item{"nested brackets of the test functions", CheckStatus::pass, {}, ""};
  if (!residual.is_zero_expr()) {
    item.status = CheckStatus::fail;
    item.witnesses.push_back({"given test functions", to_string(residual)});
  }
  rep.add(item);
  return rep;
}

ExteriorTensor pushforward_base_tensor(const NambuStructure& P) {
  return anchor_pushforward(P.tensor(), tangent_algebroid(P.algebroid()->chart));
}

NambuStructure maximal_from_volume(const VolumeSection& mu) {
  const auto& A = mu.algebroid;
  if (A->rank < 3) throw domain_error("maximal structures need rank at least 3");
  ExteriorTensor pi(A, Variance::multivector, A->rank);
  pi.set_coeff(mu.top_mask(), ScalarExpr::one() / mu.coeff);
  NambuStructure P(std::move(pi));
  P.mark_verified();
  return P;
}

}  // namespace nambu
