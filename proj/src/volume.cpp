#include "nambu/volume.hpp"

#include <bit>

namespace nambu {

namespace {

// Nonzero constants and constant multiples of exponentials never vanish;
// anything else needs the caller's declaration.
bool visibly_nonvanishing(const ScalarExpr& u) {
  const RatFunc& r = u.rep();
  auto plain = [](const Poly& p) {
    return p.size() == 1 && p.begin()->first.pow.empty();
  };
  return plain(r.num) && plain(r.den);
}

int full_insertion_sign(std::uint32_t ins) {
  // Sign of inserting the ascending factors of `ins` into the full top mask,
  // lowest factor first.
  int sign = 1;
  std::uint32_t removed = 0;
  while (ins) {
    std::uint32_t bit = ins & (~ins + 1);
    if (std::popcount((bit - 1) & ~removed) & 1) sign = -sign;
    removed |= bit;
    ins &= ~bit;
  }
  return sign;
}

}  // namespace

std::uint32_t VolumeSection::top_mask() const {
  return (1u << algebroid->rank) - 1;
}

ExteriorTensor VolumeSection::form() const {
  ExteriorTensor t(algebroid, Variance::form, algebroid->rank);
  t.set_coeff(top_mask(), coeff);
  return t;
}

VolumeSection make_volume(const AlgebroidPtr& A, const ScalarExpr& u,
                          bool declared_nonvanishing) {
  if (A->rank < 1) throw domain_error("a volume needs positive rank");
  if (u.is_zero_expr())
    throw domain_error("a volume coefficient must be nonzero");
  VolumeSection v;
  v.algebroid = A;
  v.coeff = u;
  v.nonvanishing = declared_nonvanishing || visibly_nonvanishing(u);
  return v;
}

ExteriorTensor star(const VolumeSection& mu, const ExteriorTensor& P) {
  if (P.variance() != Variance::multivector)
    throw domain_error("star acts on multivectors");
  if (!compatible(P.algebroid(), mu.algebroid))
    throw domain_error("star across different algebroids");
  return contract_by_section(P, mu.form());
}

ExteriorTensor star_inv(const VolumeSection& mu, const ExteriorTensor& alpha) {
  if (alpha.variance() != Variance::form)
    throw domain_error("star_inv acts on forms");
  if (!compatible(alpha.algebroid(), mu.algebroid))
    throw domain_error("star_inv across different algebroids");
  const std::uint32_t full = mu.top_mask();
  const int m = mu.algebroid->rank;
  ExteriorTensor r(mu.algebroid, Variance::multivector, m - alpha.grade());
  for (const auto& [J, a] : alpha.comps()) {
    std::uint32_t I = full & ~J;
    int sigma = full_insertion_sign(I);
    ScalarExpr v = a / mu.coeff;
    r.set_coeff(I, sigma > 0 ? v : -v);
  }
  return r;
}

ExteriorTensor boundary(const VolumeSection& mu, const ExteriorTensor& P) {
  return star_inv(mu, d_A(star(mu, P)));
}

ScalarExpr divergence(const VolumeSection& mu, const ExteriorTensor& X) {
  if (X.grade() != 1) throw domain_error("divergence needs a grade-1 section");
  return boundary(mu, X).scalar_value();
}

VerificationReport divergence_identity_check(const VolumeSection& mu,
                                             const ExteriorTensor& P,
                                             const ExteriorTensor& alpha) {
  const int k = P.grade();
  if (alpha.grade() != k - 1)
    throw domain_error("the test form must have grade one below the multivector");
  VerificationReport rep;
  rep.name = "divergence identity";
  ScalarExpr lhs = contract_by_form(alpha, boundary(mu, P)).scalar_value();
  ScalarExpr div_part = divergence(mu, contract_by_form(alpha, P));
  ScalarExpr pair_part = contract_by_form(d_A(alpha), P).scalar_value();
  ScalarExpr rhs = (k % 2 == 0) ? div_part + pair_part : div_part - pair_part;
  ScalarExpr residual = lhs - rhs;
  CheckItem item{"contraction of the boundary", CheckStatus::pass, {}, ""};
  if (!residual.is_zero_expr()) {
    item.status = CheckStatus::fail;
    item.witnesses.push_back({"P = " + to_string(P) + ", alpha = " + to_string(alpha),
                              to_string(residual)});
  }
  rep.add(item);
  return rep;
}

}  // namespace nambu
