#pragma once

// The bracket induced on forms of grade n-1 by a verified order-n structure,
// with anchor rho after sharp: a left Leibniz algebroid, and in the maximal
// nonvanishing case a Lie algebroid. Includes the comparison bracket variant,
// the first-order derivation turning the bracket into a Loday structure, and
// the cochain differential in degrees 0 and 1 of the associated complex with
// coefficients in functions.

#include <functional>

#include "nambu/nambu.hpp"

namespace nambu {

class LeibnizAlgebroid {
 public:
  // Requires a verified structure.
  explicit LeibnizAlgebroid(NambuStructure P);

  const NambuStructure& structure() const { return P_; }
  const AlgebroidPtr& base() const { return P_.algebroid(); }
  int order() const { return P_.order(); }
  int form_grade() const { return P_.order() - 1; }

  // The anchor applied to a scalar: rho(sharp(alpha))(f).
  ScalarExpr anchor_apply(const ExteriorTensor& alpha, const ScalarExpr& f) const;

 private:
  NambuStructure P_;
};

// [alpha, beta] = L_{sharp(alpha)} beta + (-1)^n (iota_{dA alpha} Pi) beta.
ExteriorTensor leibniz_bracket(const NambuStructure& P, const ExteriorTensor& alpha,
                               const ExteriorTensor& beta);

// Comparison variant: [alpha, beta] = L_{sharp(alpha)} beta
//                                     - iota_{sharp(beta)} dA alpha.
ExteriorTensor wade_bracket(const NambuStructure& P, const ExteriorTensor& alpha,
                            const ExteriorTensor& beta);

// D(f)(alpha, beta) = rho(sharp(beta))(f) alpha - rho(sharp(alpha))(f) beta
//                     + dA f ^ iota_{sharp(alpha)} beta.
ExteriorTensor loday_derivation(const NambuStructure& P, const ScalarExpr& f,
                                const ExteriorTensor& alpha, const ExteriorTensor& beta);

using Cochain1 = std::function<ScalarExpr(const ExteriorTensor&)>;

// Degree-0 differential evaluated at one argument: (df)(alpha) =
// rho(sharp(alpha))(f).
ScalarExpr cochain_d0(const NambuStructure& P, const ScalarExpr& f,
                      const ExteriorTensor& alpha);

// Degree-1 differential evaluated at a pair: (dc)(alpha, beta) =
// rho(sharp(alpha))(c(beta)) - rho(sharp(beta))(c(alpha)) - c([alpha, beta]).
ScalarExpr cochain_d1(const NambuStructure& P, const Cochain1& c,
                      const ExteriorTensor& alpha, const ExteriorTensor& beta);

}  // namespace nambu
