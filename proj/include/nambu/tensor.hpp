#pragma once

// Sparse exterior tensors over an algebroid presentation. Components are
// keyed by index-set bitmasks over the frame (or coframe). The pairing of a
// decomposable multivector with a decomposable form is the determinant of the
// evaluation matrix, with no factorial normalization; contraction inserts the
// contracting section into the first slot.

#include <cstdint>
#include <map>
#include <string>

#include "nambu/algebroid.hpp"

namespace nambu {

enum class Variance { multivector, form };

class ExteriorTensor {
 public:
  ExteriorTensor(AlgebroidPtr A, Variance v, int grade);

  static ExteriorTensor scalar(AlgebroidPtr A, Variance v, const ScalarExpr& f);
  // Basis monomial for an index-set bitmask (ascending index order).
  static ExteriorTensor basis(AlgebroidPtr A, Variance v, std::uint32_t mask);

  const AlgebroidPtr& algebroid() const { return A_; }
  Variance variance() const { return v_; }
  int grade() const { return grade_; }
  const std::map<std::uint32_t, ScalarExpr>& comps() const { return comp_; }

  ScalarExpr coeff(std::uint32_t mask) const;
  void set_coeff(std::uint32_t mask, const ScalarExpr& f);
  bool is_zero_tensor() const { return comp_.empty(); }

  // The single coefficient of a grade-0 tensor.
  ScalarExpr scalar_value() const;

  friend ExteriorTensor operator+(const ExteriorTensor& a, const ExteriorTensor& b);
  friend ExteriorTensor operator-(const ExteriorTensor& a, const ExteriorTensor& b);
  ExteriorTensor operator-() const;

 private:
  AlgebroidPtr A_;
  Variance v_;
  int grade_;
  std::map<std::uint32_t, ScalarExpr> comp_;  // no zero coefficients
};

ExteriorTensor scalar_mul(const ScalarExpr& f, const ExteriorTensor& t);
ExteriorTensor wedge(const ExteriorTensor& a, const ExteriorTensor& b);

// Contraction of a form by a multivector: the multivector fills the leading
// argument slots. Grade k into grade n gives grade n-k.
ExteriorTensor contract_by_section(const ExteriorTensor& X, const ExteriorTensor& alpha);
// Contraction of a multivector by a form, the dual operation.
ExteriorTensor contract_by_form(const ExteriorTensor& eta, const ExteriorTensor& P);

// Full pairing of a grade-k multivector with a grade-k form.
ScalarExpr pairing(const ExteriorTensor& P, const ExteriorTensor& alpha);

bool equal(const ExteriorTensor& a, const ExteriorTensor& b);

// Name of a basis monomial, e.g. "e1^e3" or "e1*^e3*" for forms.
std::string basis_name(const AlgebroidPresentation& A, Variance v, std::uint32_t mask);
std::string to_string(const ExteriorTensor& t);

}  // namespace nambu
