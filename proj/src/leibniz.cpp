#include "nambu/leibniz.hpp"

namespace nambu {

namespace {

void require_arg(const NambuStructure& P, const ExteriorTensor& alpha) {
  if (alpha.variance() != Variance::form || alpha.grade() != P.order() - 1)
    throw domain_error("bracket arguments are forms of grade one below the order");
  if (!compatible(alpha.algebroid(), P.algebroid()))
    throw domain_error("argument lives over a different algebroid");
}

}  // namespace

LeibnizAlgebroid::LeibnizAlgebroid(NambuStructure P) : P_(std::move(P)) {
  if (P_.status() != NambuStatus::verified)
    throw domain_error("the induced bracket needs a verified structure");
}

ScalarExpr LeibnizAlgebroid::anchor_apply(const ExteriorTensor& alpha,
                                          const ScalarExpr& f) const {
  require_arg(P_, alpha);
  return nambu::anchor_apply(sharp(P_, alpha), f);
}

ExteriorTensor leibniz_bracket(const NambuStructure& P, const ExteriorTensor& alpha,
                               const ExteriorTensor& beta) {
  require_arg(P, alpha);
  require_arg(P, beta);
  const int n = P.order();
  ExteriorTensor lie = lie_derivative_form(sharp(P, alpha), beta);
  ScalarExpr pair = contract_by_form(d_A(alpha), P.tensor()).scalar_value();
  ExteriorTensor second = scalar_mul(pair, beta);
  return (n % 2 == 0) ? lie + second : lie - second;
}

ExteriorTensor wade_bracket(const NambuStructure& P, const ExteriorTensor& alpha,
                            const ExteriorTensor& beta) {
  require_arg(P, alpha);
  require_arg(P, beta);
  return lie_derivative_form(sharp(P, alpha), beta) -
         contract_by_section(sharp(P, beta), d_A(alpha));
}

ExteriorTensor loday_derivation(const NambuStructure& P, const ScalarExpr& f,
                                const ExteriorTensor& alpha, const ExteriorTensor& beta) {
  require_arg(P, alpha);
  require_arg(P, beta);
  const auto& A = P.algebroid();
  ExteriorTensor first = scalar_mul(anchor_apply(sharp(P, beta), f), alpha);
  ExteriorTensor second = scalar_mul(anchor_apply(sharp(P, alpha), f), beta);
  ExteriorTensor third =
      wedge(d_A(ExteriorTensor::scalar(A, Variance::form, f)),
            contract_by_section(sharp(P, alpha), beta));
  return first - second + third;
}

ScalarExpr cochain_d0(const NambuStructure& P, const ScalarExpr& f,
                      const ExteriorTensor& alpha) {
  require_arg(P, alpha);
  return anchor_apply(sharp(P, alpha), f);
}

ScalarExpr cochain_d1(const NambuStructure& P, const Cochain1& c,
                      const ExteriorTensor& alpha, const ExteriorTensor& beta) {
  require_arg(P, alpha);
  require_arg(P, beta);
  return anchor_apply(sharp(P, alpha), c(beta)) -
         anchor_apply(sharp(P, beta), c(alpha)) - c(leibniz_bracket(P, alpha, beta));
}

}  // namespace nambu
