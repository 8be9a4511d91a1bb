#pragma once

// Line-bundle representations of the induced algebroid of forms, their
// characteristic 1-cochains, exact coframe expansions, and the comparison of
// the characteristic cocycle of the derived top line bundle with the
// rank-scaled modular tensor on tangent chart models.

#include "nambu/modular.hpp"

namespace nambu {

// Action of argument forms (grade one below the order) on top-grade forms,
// with the structure it belongs to. Only the scalar factor of the action on
// a trivializing section is ever extracted.
struct LineRepresentation {
  NambuStructure structure;
  std::function<ExteriorTensor(const ExteriorTensor& alpha,
                               const ExteriorTensor& lambda)>
      action;
  std::string section_note;
};

// The representation on top coforms induced by a verified structure:
//   nabla_alpha lambda = L_{sharp(alpha)} lambda + (-1)^n <Pi, dA alpha> lambda.
LineRepresentation maximal_line_representation(const NambuStructure& P);

// Flatness along the induced bracket and the module rule in the section
// argument, swept on weighted bases.
VerificationReport representation_check(const LineRepresentation& rep,
                                        const VolumeSection& s);

// theta with nabla_a s = theta(a) s, evaluated lazily on argument forms.
// Throws if the action leaves the line through the section.
Cochain1 characteristic_cocycle(const LineRepresentation& rep,
                                const VolumeSection& s);

// Exact coefficients of `target` in a pointwise-independent list of tensors
// of one grade and variance; solved over the scalar field by elimination.
std::vector<ScalarExpr> expand_in_basis(const std::vector<ExteriorTensor>& basis,
                                        const ExteriorTensor& target);

// c[k][j] with L_{sharp(dA f_1 ^ .. ^ dA f_{m-1})} eta_k = sum_j c[k][j] eta_j
// for a coframe eta of grade-1 forms.
std::vector<std::vector<ScalarExpr>> coframe_coefficients(
    const NambuStructure& P, const std::vector<ExteriorTensor>& coframe,
    const std::vector<ScalarExpr>& fs);

// For a nonvanishing top multivector on a tangent chart model and a global
// coframe: computes the characteristic cocycle of the derived algebroid's
// top line bundle through the two-term action on the generator pair, the
// coframe coefficient matrix, and the modular tensor of the coframe volume,
// then checks the trace identities and that the cocycle is rank-times the
// modular contraction, all with uninterpreted Hamiltonians.
VerificationReport compare_modular_classes(
    const ExteriorTensor& pi, const std::vector<ExteriorTensor>& coframe);

}  // namespace nambu
