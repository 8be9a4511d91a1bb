#pragma once

// A Lie algebroid presented in a global frame over one chart: anchor matrix
// and structure functions of the frame bracket. Base manifolds of dimension
// zero (a chart with no coordinates) present plain Lie algebras.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nambu/report.hpp"
#include "nambu/scalar.hpp"

namespace nambu {

struct AlgebroidPresentation {
  ChartPtr chart;
  int rank = 0;                      // fiber rank m
  std::vector<std::string> frame;    // m frame section names
  // anchor[i][a]: coefficient of d/dx_a in the image of frame section i.
  std::vector<std::vector<ScalarExpr>> anchor;
  // Structure functions for i < j: value[k] is the e_k coefficient of the
  // bracket of frame sections i and j. Missing pairs mean zero.
  std::map<std::pair<int, int>, std::vector<ScalarExpr>> structure;
  // Declared uninterpreted function symbols usable in coefficients.
  std::set<std::string> symbols;

  int dim() const { return chart->dim(); }
  // Structure function with antisymmetry filled in; any i, j, k in range.
  ScalarExpr c(int i, int j, int k) const;
  // Anchor of frame section i applied to a scalar.
  ScalarExpr anchor_apply_frame(int i, const ScalarExpr& f) const;
};
using AlgebroidPtr = std::shared_ptr<const AlgebroidPresentation>;

// Two presentations are interchangeable when they are the same object or
// structurally equal.
bool compatible(const AlgebroidPtr& a, const AlgebroidPtr& b);

// Checks shape constraints, the frame Jacobi identity (with anchor-derivative
// terms), and that the anchor maps frame brackets to vector-field brackets.
VerificationReport validate_axioms(const AlgebroidPtr& a);

// The tangent algebroid of a chart: identity anchor, zero bracket. Frame
// section i is d/dx_i, named "e<i+1>".
AlgebroidPtr tangent_algebroid(const ChartPtr& chart);

// A Lie algebra as an algebroid over a point: empty chart, zero anchor,
// constant structure functions. `structure` uses the same i<j keying.
AlgebroidPtr lie_algebra_point(
    std::vector<std::string> frame,
    std::map<std::pair<int, int>, std::vector<Rational>> structure);

// Action algebroid of a Lie algebra acting on a chart through the given
// vector fields (one per frame section, each with dim(chart) components).
// Validation of the result checks that the fields realize the bracket.
AlgebroidPtr action_algebroid(
    const ChartPtr& chart, std::vector<std::string> frame,
    std::map<std::pair<int, int>, std::vector<Rational>> structure,
    std::vector<std::vector<ScalarExpr>> fields);

}  // namespace nambu
