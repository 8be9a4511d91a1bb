#pragma once

// Exterior calculus over an algebroid presentation: the differential, Lie
// derivatives of forms and multivectors, the Gerstenhaber bracket of
// multivectors, and the generalized Lie derivative along a multivector.

#include "nambu/tensor.hpp"

namespace nambu {

// Anchor image of a grade-1 multivector applied to a scalar.
ScalarExpr anchor_apply(const ExteriorTensor& X, const ScalarExpr& f);

// Components of the anchor image of a grade-1 multivector (one per chart
// coordinate).
std::vector<ScalarExpr> anchor_components(const ExteriorTensor& X);

// Bracket of two grade-1 multivectors (sections), extended from the frame
// bracket by the Leibniz rule in each argument.
ExteriorTensor section_bracket(const ExteriorTensor& X, const ExteriorTensor& Y);

// The differential: forms of grade n to forms of grade n+1, by the
// alternating-sum formula over frame tuples.
ExteriorTensor d_A(const ExteriorTensor& alpha);

// Lie derivative of a form along a section, by the direct formula
// (anchor derivative of the coefficient minus bracket insertions).
ExteriorTensor lie_derivative_form(const ExteriorTensor& X, const ExteriorTensor& alpha);

// Lie derivative of a multivector along a section, by the dual formula
// evaluated against coframe tuples. Independent of the Gerstenhaber route;
// the two are cross-checked in tests.
ExteriorTensor lie_derivative_multivector(const ExteriorTensor& X, const ExteriorTensor& P);

// Gerstenhaber bracket of multivectors, grade (p, q) to p+q-1, computed by
// monomial recursion through the wedge derivation property and graded
// antisymmetry.
ExteriorTensor schouten(const ExteriorTensor& P, const ExteriorTensor& Q);

// Lie derivative of a form along a grade-i multivector:
// contraction with the differential, graded-commutator style.
ExteriorTensor generalized_lie_derivative(const ExteriorTensor& P, const ExteriorTensor& alpha);

// Pushes a multivector forward through the anchor onto the tangent algebroid
// of the same chart.
ExteriorTensor anchor_pushforward(const ExteriorTensor& P, const AlgebroidPtr& tangent);

// Pulls a form on the tangent algebroid of A's chart back to A along the
// anchor, factor by factor on monomials.
ExteriorTensor anchor_pullback(const ExteriorTensor& beta, const AlgebroidPtr& A);

// Cotangent algebroid of a Poisson bivector on the tangent algebroid of a
// chart. Frame section i presents the differential of coordinate i; the
// anchor row is the sharp image and the structure functions are coordinate
// partials of the bivector components. Requires the bivector to have
// vanishing self-bracket.
AlgebroidPtr cotangent_algebroid_of_poisson(const ExteriorTensor& pi);

}  // namespace nambu
