#include "nambu/line_rep.hpp"

#include <bit>
#include <set>

namespace nambu {

namespace {

constexpr const char* kWeight = "_w";
constexpr const char* kWeightLeft = "_g";
constexpr const char* kWeightRight = "_h";

// Identity anchor, zero bracket, rank equal to the base dimension.
bool tangent_chart_model(const AlgebroidPtr& A) {
  if (A->rank != A->dim()) return false;
  for (int i = 0; i < A->rank; ++i)
    for (int a = 0; a < A->dim(); ++a) {
      ScalarExpr want = (i == a) ? ScalarExpr::one() : ScalarExpr::zero();
      if (!(A->anchor[i][a] - want).is_zero_expr()) return false;
    }
  for (int i = 0; i < A->rank; ++i)
    for (int j = i + 1; j < A->rank; ++j)
      for (int k = 0; k < A->rank; ++k)
        if (!A->c(i, j, k).is_zero_expr()) return false;
  return true;
}

ExteriorTensor weighted_basis_form(const AlgebroidPtr& A, std::uint32_t mask,
                                   const char* weight) {
  return scalar_mul(ScalarExpr::symbol(weight),
                    ExteriorTensor::basis(A, Variance::form, mask));
}

}  // namespace

LineRepresentation maximal_line_representation(const NambuStructure& P) {
  if (P.status() != NambuStatus::verified)
    throw domain_error("the line representation needs a verified structure");
  NambuStructure held = P;
  const int n = P.order();
  const int m = P.algebroid()->rank;
  auto action = [held, n, m](const ExteriorTensor& alpha,
                             const ExteriorTensor& lambda) {
    if (alpha.variance() != Variance::form || alpha.grade() != n - 1)
      throw domain_error("the argument must be a form of grade one below the order");
    if (lambda.variance() != Variance::form || lambda.grade() != m)
      throw domain_error("the section must be a top form");
    ExteriorTensor lie = lie_derivative_form(sharp(held, alpha), lambda);
    ScalarExpr pair = pairing(held.tensor(), d_A(alpha));
    ExteriorTensor scaled = scalar_mul(pair, lambda);
    return (n % 2 == 0) ? lie + scaled : lie - scaled;
  };
  return LineRepresentation{std::move(held), std::move(action),
                            "top coforms of the presentation frame"};
}

VerificationReport representation_check(const LineRepresentation& rep,
                                        const VolumeSection& s) {
  const NambuStructure& P = rep.structure;
  const auto& A = P.algebroid();
  if (!compatible(A, s.algebroid))
    throw domain_error("section volume lives on a different algebroid");
  const int m = A->rank;
  const int n = P.order();
  const ExteriorTensor lambda = s.form();

  VerificationReport out;
  out.name = "line representation laws";
  out.note = "weighted basis sweeps";

  for (std::uint32_t left = 0; left < (1u << m); ++left) {
    if (std::popcount(left) != n - 1) continue;
    ExteriorTensor alpha = weighted_basis_form(A, left, kWeightLeft);
    CheckItem item;
    item.name = "flatness at " + basis_name(*A, Variance::form, left);
    for (std::uint32_t right = 0; right < (1u << m); ++right) {
      if (std::popcount(right) != n - 1) continue;
      ExteriorTensor beta = weighted_basis_form(A, right, kWeightRight);
      ExteriorTensor along_bracket = rep.action(leibniz_bracket(P, alpha, beta), lambda);
      ExteriorTensor commutator =
          rep.action(alpha, rep.action(beta, lambda)) -
          rep.action(beta, rep.action(alpha, lambda));
      ExteriorTensor residual = along_bracket - commutator;
      if (!residual.is_zero_tensor()) {
        item.status = CheckStatus::fail;
        item.witnesses.push_back(
            {"against " + basis_name(*A, Variance::form, right), to_string(residual)});
      }
    }
    out.add(std::move(item));
  }

  {
    CheckItem item{"module rule in the section slot", CheckStatus::pass, {}, ""};
    ScalarExpr f = ScalarExpr::symbol(kWeight);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      if (std::popcount(mask) != n - 1) continue;
      ExteriorTensor alpha = weighted_basis_form(A, mask, kWeightLeft);
      ExteriorTensor residual =
          rep.action(alpha, scalar_mul(f, lambda)) -
          scalar_mul(f, rep.action(alpha, lambda)) -
          scalar_mul(anchor_apply(sharp(P, alpha), f), lambda);
      if (!residual.is_zero_tensor()) {
        item.status = CheckStatus::fail;
        item.witnesses.push_back(
            {"at " + basis_name(*A, Variance::form, mask), to_string(residual)});
      }
    }
    out.add(std::move(item));
  }
  return out;
}

Cochain1 characteristic_cocycle(const LineRepresentation& rep,
                                const VolumeSection& s) {
  if (!compatible(rep.structure.algebroid(), s.algebroid))
    throw domain_error("section volume lives on a different algebroid");
  if (!s.nonvanishing)
    throw domain_error("the trivializing section must be declared nonvanishing");
  LineRepresentation held = rep;
  VolumeSection section = s;
  const int top_grade = section.form().grade();
  return [held, section, top_grade](const ExteriorTensor& alpha) {
    ExteriorTensor image = held.action(alpha, section.form());
    if (image.is_zero_tensor()) return ScalarExpr::zero();
    if (image.variance() != Variance::form || image.grade() != top_grade)
      throw domain_error("the action image is not a multiple of the section");
    return image.coeff(section.top_mask()) / section.coeff;
  };
}

std::vector<ScalarExpr> expand_in_basis(const std::vector<ExteriorTensor>& basis,
                                        const ExteriorTensor& target) {
  if (basis.empty()) throw domain_error("empty expansion basis");
  const auto& A = basis[0].algebroid();
  const Variance v = basis[0].variance();
  const int g = basis[0].grade();
  for (const auto& b : basis)
    if (!compatible(b.algebroid(), A) || b.variance() != v || b.grade() != g)
      throw domain_error("expansion basis entries must share grade and variance");
  if (!compatible(target.algebroid(), A) || target.variance() != v ||
      target.grade() != g)
    throw domain_error("expansion target must match the basis grade and variance");

  std::set<std::uint32_t> masks;
  for (const auto& b : basis)
    for (const auto& [mask, coeff] : b.comps()) masks.insert(mask);
  for (const auto& [mask, coeff] : target.comps()) masks.insert(mask);

  const int cols = static_cast<int>(basis.size());
  std::vector<std::vector<ScalarExpr>> rows;
  for (std::uint32_t mask : masks) {
    std::vector<ScalarExpr> row;
    row.reserve(cols + 1);
    for (const auto& b : basis) row.push_back(b.coeff(mask));
    row.push_back(target.coeff(mask));
    rows.push_back(std::move(row));
  }

  const int nrows = static_cast<int>(rows.size());
  std::vector<int> pivot_cols;
  int rank = 0;
  for (int col = 0; col < cols && rank < nrows; ++col) {
    int found = -1;
    for (int r = rank; r < nrows; ++r)
      if (!rows[r][col].is_zero_expr()) { found = r; break; }
    if (found < 0) continue;
    std::swap(rows[rank], rows[found]);
    ScalarExpr pivot = rows[rank][col];
    for (int c = col; c <= cols; ++c) rows[rank][c] = rows[rank][c] / pivot;
    for (int r = 0; r < nrows; ++r) {
      if (r == rank) continue;
      ScalarExpr factor = rows[r][col];
      if (factor.is_zero_expr()) continue;
      for (int c = col; c <= cols; ++c)
        rows[r][c] = rows[r][c] - factor * rows[rank][c];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  if (rank < cols) throw domain_error("expansion basis is singular");
  for (int r = rank; r < nrows; ++r)
    if (!rows[r][cols].is_zero_expr())
      throw domain_error("expansion target lies outside the span of the basis");

  std::vector<ScalarExpr> out(cols, ScalarExpr::zero());
  for (int i = 0; i < rank; ++i) out[pivot_cols[i]] = rows[i][cols];
  return out;
}

std::vector<std::vector<ScalarExpr>> coframe_coefficients(
    const NambuStructure& P, const std::vector<ExteriorTensor>& coframe,
    const std::vector<ScalarExpr>& fs) {
  const auto& A = P.algebroid();
  if (static_cast<int>(coframe.size()) != A->rank)
    throw domain_error("coframe size must match the rank");
  for (const auto& eta : coframe)
    if (eta.variance() != Variance::form || eta.grade() != 1 ||
        !compatible(eta.algebroid(), A))
      throw domain_error("coframe entries must be grade-1 forms on the algebroid");
  ExteriorTensor X = hamiltonian_section(P, fs);
  std::vector<std::vector<ScalarExpr>> c;
  c.reserve(coframe.size());
  for (const auto& eta : coframe)
    c.push_back(expand_in_basis(coframe, lie_derivative_form(X, eta)));
  return c;
}

VerificationReport compare_modular_classes(
    const ExteriorTensor& pi, const std::vector<ExteriorTensor>& coframe) {
  const AlgebroidPtr& A = pi.algebroid();
  if (!tangent_chart_model(A))
    throw domain_error("class comparison runs on tangent chart models");
  const int m = A->rank;
  if (m < 3) throw domain_error("class comparison needs rank at least 3");
  if (pi.variance() != Variance::multivector || pi.grade() != m)
    throw domain_error("a top multivector is required");
  const std::uint32_t full = (1u << m) - 1;
  if (pi.coeff(full).is_zero_expr())
    throw domain_error("a nonvanishing top multivector is required");
  if (static_cast<int>(coframe.size()) != m)
    throw domain_error("coframe size must match the rank");
  for (const auto& eta : coframe)
    if (eta.variance() != Variance::form || eta.grade() != 1 ||
        !compatible(eta.algebroid(), A))
      throw domain_error("coframe entries must be grade-1 forms on the algebroid");

  ExteriorTensor eta_top = coframe[0];
  for (int i = 1; i < m; ++i) eta_top = wedge(eta_top, coframe[i]);
  ScalarExpr det = eta_top.coeff(full);
  if (det.is_zero_expr()) throw domain_error("singular coframe");
  VolumeSection vol = make_volume(A, det, true);

  NambuStructure P(pi);
  check_nambu(P);
  if (P.status() != NambuStatus::verified)
    throw internal_error("a top multivector failed the defining condition");

  std::vector<ScalarExpr> fs;
  for (int i = 1; i < m; ++i) fs.push_back(ScalarExpr::symbol("_f" + std::to_string(i)));
  ExteriorTensor a = d_A(ExteriorTensor::scalar(A, Variance::form, fs[0]));
  for (int i = 1; i < m - 1; ++i)
    a = wedge(a, d_A(ExteriorTensor::scalar(A, Variance::form, fs[i])));

  // Complementary wedges of the coframe generate the derived algebroid's
  // sections; the top wedge over them trivializes its determinant line.
  std::vector<ExteriorTensor> etabar;
  for (int i = 0; i < m; ++i) {
    ExteriorTensor w = ExteriorTensor::scalar(A, Variance::form, ScalarExpr::one());
    for (int j = 0; j < m; ++j)
      if (j != i) w = wedge(w, coframe[j]);
    etabar.push_back(std::move(w));
  }

  // Bracket term of the action on the generator pair: the bracket extends to
  // the top wedge as a derivation, and only the diagonal expansion
  // coefficients survive the wedge with the remaining slots.
  ScalarExpr t1 = ScalarExpr::zero();
  for (int i = 0; i < m; ++i) {
    ExteriorTensor br = leibniz_bracket(P, a, etabar[i]);
    std::vector<ScalarExpr> coefs = expand_in_basis(etabar, br);
    t1 = t1 + coefs[i];
  }

  // Base-derivative term of the action on the generator pair.
  ExteriorTensor lie_top = lie_derivative_form(sharp(P, a), vol.form());
  ScalarExpr t2 = lie_top.coeff(full) / det;

  std::vector<std::vector<ScalarExpr>> c = coframe_coefficients(P, coframe, fs);
  ScalarExpr ctrace = ScalarExpr::zero();
  for (int k = 0; k < m; ++k) ctrace = ctrace + c[k][k];

  ModularTensor M = modular_tensor(P, vol);
  ScalarExpr mod_pair = pairing(M.tensor, a);

  VerificationReport out;
  out.name = "comparison of the line-bundle cocycle with the modular tensor";
  out.note = "comparison factor " + std::to_string(m) + "; uninterpreted Hamiltonians";

  {
    CheckItem item{"derived bracket trace", CheckStatus::pass, {}, ""};
    ScalarExpr res = t1 - ScalarExpr::integer(m - 1) * ctrace;
    if (!res.is_zero_expr()) {
      item.status = CheckStatus::fail;
      item.witnesses.push_back(
          {"bracket trace minus the scaled coframe trace", to_string(res)});
    }
    out.add(std::move(item));
  }
  {
    CheckItem item{"volume derivative trace", CheckStatus::pass, {}, ""};
    ScalarExpr res = t2 - ctrace;
    if (!res.is_zero_expr()) {
      item.status = CheckStatus::fail;
      item.witnesses.push_back(
          {"volume derivative minus the coframe trace", to_string(res)});
    }
    out.add(std::move(item));
  }
  {
    CheckItem item{"cocycle equals the rank-scaled modular contraction",
                   CheckStatus::pass, {}, ""};
    ScalarExpr res = (t1 + t2) - ScalarExpr::integer(m) * mod_pair;
    if (!res.is_zero_expr()) {
      item.status = CheckStatus::fail;
      item.witnesses.push_back({"cocycle minus the scaled contraction", to_string(res)});
    }
    out.add(std::move(item));
  }
  return out;
}

}  // namespace nambu
