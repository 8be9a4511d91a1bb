#include "nambu/modular.hpp"

#include <bit>

namespace nambu {

namespace {

constexpr const char* kWeight = "_w";
constexpr const char* kWeightLeft = "_g";
constexpr const char* kWeightRight = "_h";

void require_inputs(const NambuStructure& P, const VolumeSection& mu) {
  if (P.status() != NambuStatus::verified)
    throw domain_error("the modular tensor needs a verified structure");
  if (!compatible(P.algebroid(), mu.algebroid))
    throw domain_error("structure and volume live on different algebroids");
  if (!mu.nonvanishing)
    throw domain_error("the volume coefficient is not declared nonvanishing");
}

// Residual of the contraction relation at one argument form, as a top form:
//   (iota_alpha M) mu - L_{sharp(alpha)} mu - (-1)^n (iota_{dA alpha} Pi) mu.
ExteriorTensor defining_residual(const ExteriorTensor& M, const NambuStructure& P,
                                 const VolumeSection& mu, const ExteriorTensor& alpha) {
  const int n = P.order();
  ExteriorTensor muform = mu.form();
  ExteriorTensor lhs = scalar_mul(pairing(M, alpha), muform);
  ExteriorTensor lie = lie_derivative_form(sharp(P, alpha), muform);
  ScalarExpr pair = contract_by_form(d_A(alpha), P.tensor()).scalar_value();
  ExteriorTensor scaled = scalar_mul(pair, muform);
  ExteriorTensor rhs = (n % 2 == 0) ? lie + scaled : lie - scaled;
  return lhs - rhs;
}

ExteriorTensor weighted_basis_form(const AlgebroidPtr& A, std::uint32_t mask,
                                   const char* weight) {
  return scalar_mul(ScalarExpr::symbol(weight),
                    ExteriorTensor::basis(A, Variance::form, mask));
}

void verify_defining_relation(const ExteriorTensor& M, const NambuStructure& P,
                              const VolumeSection& mu) {
  const auto& A = P.algebroid();
  const int m = A->rank;
  const int n = P.order();
  for (std::uint32_t omega = 0; omega < (1u << m); ++omega) {
    if (std::popcount(omega) != n - 1) continue;
    ExteriorTensor alpha = weighted_basis_form(A, omega, kWeight);
    ExteriorTensor residual = defining_residual(M, P, mu, alpha);
    if (!residual.is_zero_tensor())
      throw internal_error(
          "modular tensor does not satisfy its contraction relation at alpha = " +
          to_string(alpha) + "; residual " + to_string(residual));
  }
}

}  // namespace

ModularTensor modular_tensor(const NambuStructure& P, const VolumeSection& mu) {
  require_inputs(P, mu);
  ExteriorTensor M = boundary(mu, P.tensor());
  verify_defining_relation(M, P, mu);
  return ModularTensor{std::move(M), P, mu};
}

ModularTensor volume_change(const ModularTensor& M, const ScalarExpr& g) {
  const auto& A = M.structure.algebroid();
  VolumeSection scaled =
      make_volume(A, exp(g) * M.volume.coeff, M.volume.nonvanishing);
  ModularTensor out = modular_tensor(M.structure, scaled);
  const int m = A->rank;
  const int n = M.structure.order();
  ExteriorTensor diff = out.tensor - M.tensor;
  for (std::uint32_t omega = 0; omega < (1u << m); ++omega) {
    if (std::popcount(omega) != n - 1) continue;
    ExteriorTensor alpha = weighted_basis_form(A, omega, kWeight);
    ScalarExpr lhs = pairing(diff, alpha);
    ScalarExpr rhs = anchor_apply(sharp(M.structure, alpha), g);
    if (!(lhs - rhs).is_zero_expr())
      throw internal_error("volume rescaling did not shift the modular tensor by "
                           "the anchor derivative of the exponent at alpha = " +
                           to_string(alpha));
  }
  return out;
}

VerificationReport modular_property_checks(const ModularTensor& M) {
  const auto& mu = M.volume;
  const ExteriorTensor& pi = M.structure.tensor();
  VerificationReport rep;
  rep.name = "modular tensor properties";

  {
    CheckItem item{"divergence-free", CheckStatus::pass, {}, ""};
    ExteriorTensor b = boundary(mu, M.tensor);
    if (!b.is_zero_tensor()) {
      item.status = CheckStatus::fail;
      item.witnesses.push_back({"boundary of the modular tensor", to_string(b)});
    }
    rep.add(item);
  }
  {
    CheckItem item{"star image is the differential of the contracted volume",
                   CheckStatus::pass,
                   {},
                   ""};
    ExteriorTensor lhs = contract_by_section(M.tensor, mu.form());
    ExteriorTensor rhs = d_A(contract_by_section(pi, mu.form()));
    ExteriorTensor residual = lhs - rhs;
    if (!residual.is_zero_tensor()) {
      item.status = CheckStatus::fail;
      item.witnesses.push_back({"difference of the two forms", to_string(residual)});
    }
    rep.add(item);
  }
  {
    CheckItem item{"volume invariance along the modular tensor",
                   CheckStatus::pass,
                   {},
                   ""};
    ExteriorTensor lie = generalized_lie_derivative(M.tensor, mu.form());
    if (!lie.is_zero_tensor()) {
      item.status = CheckStatus::fail;
      item.witnesses.push_back({"derivative of the volume", to_string(lie)});
    }
    rep.add(item);
  }
  return rep;
}

VerificationReport cocycle_check(const ModularTensor& M) {
  const NambuStructure& P = M.structure;
  const auto& A = P.algebroid();
  const int m = A->rank;
  const int n = P.order();
  VerificationReport rep;
  rep.name = "cocycle condition of the modular tensor";
  for (std::uint32_t om1 = 0; om1 < (1u << m); ++om1) {
    if (std::popcount(om1) != n - 1) continue;
    ExteriorTensor alpha = weighted_basis_form(A, om1, kWeightLeft);
    CheckItem item{"left argument " + basis_name(*A, Variance::form, om1),
                   CheckStatus::pass,
                   {},
                   ""};
    for (std::uint32_t om2 = 0; om2 < (1u << m); ++om2) {
      if (std::popcount(om2) != n - 1) continue;
      ExteriorTensor beta = weighted_basis_form(A, om2, kWeightRight);
      ScalarExpr lhs = pairing(M.tensor, leibniz_bracket(P, alpha, beta));
      ScalarExpr rhs = anchor_apply(sharp(P, alpha), pairing(M.tensor, beta)) -
                       anchor_apply(sharp(P, beta), pairing(M.tensor, alpha));
      ScalarExpr residual = lhs - rhs;
      if (!residual.is_zero_expr()) {
        item.status = CheckStatus::fail;
        item.witnesses.push_back(
            {"beta = " + to_string(beta), to_string(residual)});
      }
    }
    rep.add(item);
  }
  rep.note = "weighted basis pairs with independent weights";
  return rep;
}

VerificationReport subordinate_modular_check(const NambuStructure& P,
                                             const ExteriorTensor& alpha_bar,
                                             const VolumeSection& mu) {
  VerificationReport rep;
  rep.name = "modular tensor of a subordinate structure";
  NambuStructure sub = subordinate(P, {alpha_bar});
  ExteriorTensor lhs = modular_tensor(sub, mu).tensor;
  ExteriorTensor rhs = contract_by_form(alpha_bar, modular_tensor(P, mu).tensor);
  CheckItem item{"contraction of the parent modular tensor",
                 CheckStatus::pass,
                 {},
                 ""};
  ExteriorTensor residual = lhs - rhs;
  if (!residual.is_zero_tensor()) {
    item.status = CheckStatus::fail;
    item.witnesses.push_back(
        {"alpha = " + to_string(alpha_bar), to_string(residual)});
  }
  rep.add(item);
  return rep;
}

VerificationReport hamiltonian_invariance_check(const NambuStructure& P,
                                                const VolumeSection& mu,
                                                const ScalarExpr& g) {
  const auto& A = P.algebroid();
  const int m = A->rank;
  const int n = P.order();
  VerificationReport rep;
  rep.name = "volume invariance under Hamiltonian sections";
  ModularTensor M = modular_tensor(P, mu);

  bool accepted = true;
  for (std::uint32_t omega = 0; omega < (1u << m); ++omega) {
    if (std::popcount(omega) != n - 1) continue;
    ExteriorTensor basis = ExteriorTensor::basis(A, Variance::form, omega);
    ScalarExpr residual =
        pairing(M.tensor, basis) - anchor_apply(sharp(P, basis), g);
    CheckItem item{"potential at " + basis_name(*A, Variance::form, omega),
                   CheckStatus::pass,
                   {},
                   ""};
    if (!residual.is_zero_expr()) {
      accepted = false;
      item.status = CheckStatus::fail;
      item.note = "potential rejected";
      item.witnesses.push_back(
          {"argument " + basis_name(*A, Variance::form, omega), to_string(residual)});
    }
    rep.add(item);
  }

  CheckItem inv{"invariance of the rescaled volume", CheckStatus::pass, {}, ""};
  if (!accepted) {
    inv.status = CheckStatus::skipped;
    inv.note = "potential rejected, nothing to verify";
  } else {
    VolumeSection scaled = make_volume(A, exp(-g) * mu.coeff, mu.nonvanishing);
    std::vector<ScalarExpr> fs;
    for (int i = 1; i < n; ++i)
      fs.push_back(ScalarExpr::symbol("_f" + std::to_string(i)));
    ExteriorTensor X = hamiltonian_section(P, fs);
    ExteriorTensor lie = lie_derivative_form(X, scaled.form());
    if (!lie.is_zero_tensor()) {
      inv.status = CheckStatus::fail;
      inv.witnesses.push_back({"Hamiltonian section with uninterpreted functions",
                               to_string(lie)});
    } else {
      inv.note = "uninterpreted Hamiltonians, exhaustive";
    }
  }
  rep.add(inv);
  return rep;
}

}  // namespace nambu
