#include "nambu/algebroid.hpp"

namespace nambu {

ScalarExpr AlgebroidPresentation::c(int i, int j, int k) const {
  if (i == j) return ScalarExpr::zero();
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = structure.find({i, j});
  if (it == structure.end()) return ScalarExpr::zero();
  const ScalarExpr& v = it->second[static_cast<std::size_t>(k)];
  return flip ? -v : v;
}

ScalarExpr AlgebroidPresentation::anchor_apply_frame(int i, const ScalarExpr& f) const {
  ScalarExpr r = ScalarExpr::zero();
  for (int a = 0; a < dim(); ++a)
    r = r + anchor[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] *
                partial(f, *chart, a);
  return r;
}

bool compatible(const AlgebroidPtr& a, const AlgebroidPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->rank != b->rank || a->frame != b->frame) return false;
  if (a->chart->coords != b->chart->coords) return false;
  for (int i = 0; i < a->rank; ++i)
    for (int x = 0; x < a->dim(); ++x)
      if (!equal(a->anchor[i][x], b->anchor[i][x])) return false;
  for (int i = 0; i < a->rank; ++i)
    for (int j = i + 1; j < a->rank; ++j)
      for (int k = 0; k < a->rank; ++k)
        if (!equal(a->c(i, j, k), b->c(i, j, k))) return false;
  return true;
}

VerificationReport validate_axioms(const AlgebroidPtr& A) {
  VerificationReport rep;
  rep.name = "algebroid axioms";
  const int m = A->rank;
  const int d = A->dim();

  CheckItem shape{"shape", CheckStatus::pass, {}, ""};
  if (m <= 0) {
    shape.status = CheckStatus::fail;
    shape.note = "rank must be positive";
  }
  if (static_cast<int>(A->frame.size()) != m ||
      static_cast<int>(A->anchor.size()) != m) {
    shape.status = CheckStatus::fail;
    shape.note = "frame or anchor size does not match the rank";
  } else {
    for (const auto& row : A->anchor)
      if (static_cast<int>(row.size()) != d) {
        shape.status = CheckStatus::fail;
        shape.note = "anchor row length does not match the chart dimension";
      }
  }
  for (const auto& [key, v] : A->structure) {
    if (key.first < 0 || key.second <= key.first || key.second >= m ||
        static_cast<int>(v.size()) != m) {
      shape.status = CheckStatus::fail;
      shape.note = "malformed structure function entry";
    }
  }
  rep.add(shape);
  if (shape.status == CheckStatus::fail) return rep;

  // Jacobi identity on frame triples. Expanding the nested brackets through
  // the Leibniz rule leaves quadratic structure-function terms plus anchor
  // derivatives of the structure functions.
  CheckItem jacobi{"jacobi", CheckStatus::pass, {}, ""};
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        for (int p = 0; p < m; ++p) {
          ScalarExpr quad = ScalarExpr::zero();
          for (int l = 0; l < m; ++l) {
            quad = quad + A->c(i, j, l) * A->c(l, k, p)
                        + A->c(j, k, l) * A->c(l, i, p)
                        + A->c(k, i, l) * A->c(l, j, p);
          }
          ScalarExpr deriv = A->anchor_apply_frame(k, A->c(i, j, p)) +
                             A->anchor_apply_frame(i, A->c(j, k, p)) +
                             A->anchor_apply_frame(j, A->c(k, i, p));
          ScalarExpr res = quad - deriv;
          if (is_zero(res) != ZeroDecision::zero) {
            jacobi.status = CheckStatus::fail;
            jacobi.witnesses.push_back(
                {"(" + A->frame[i] + "," + A->frame[j] + "," + A->frame[k] +
                     ") -> " + A->frame[p],
                 to_string(res)});
          }
        }
  rep.add(jacobi);

  // The anchor must send frame brackets to commutators of the image fields.
  CheckItem morph{"anchor morphism", CheckStatus::pass, {}, ""};
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int a = 0; a < d; ++a) {
        ScalarExpr lhs = ScalarExpr::zero();
        for (int k = 0; k < m; ++k) lhs = lhs + A->c(i, j, k) * A->anchor[k][a];
        ScalarExpr rhs = ScalarExpr::zero();
        for (int b = 0; b < d; ++b) {
          rhs = rhs + A->anchor[i][b] * partial(A->anchor[j][a], *A->chart, b) -
                A->anchor[j][b] * partial(A->anchor[i][a], *A->chart, b);
        }
        ScalarExpr res = lhs - rhs;
        if (is_zero(res) != ZeroDecision::zero) {
          morph.status = CheckStatus::fail;
          morph.witnesses.push_back(
              {"(" + A->frame[i] + "," + A->frame[j] + ") -> " +
                   A->chart->coords[a],
               to_string(res)});
        }
      }
  rep.add(morph);
  return rep;
}

namespace {
std::vector<std::string> default_frame(int m) {
  std::vector<std::string> f;
  for (int i = 1; i <= m; ++i) f.push_back("e" + std::to_string(i));
  return f;
}

void require_valid(const AlgebroidPtr& A, const char* what) {
  VerificationReport rep = validate_axioms(A);
  if (!rep.passed())
    throw domain_error(std::string(what) +
                       " do not present a Lie algebroid:\n" + render_text(rep));
}
}  // namespace

AlgebroidPtr tangent_algebroid(const ChartPtr& chart) {
  auto A = std::make_shared<AlgebroidPresentation>();
  A->chart = chart;
  A->rank = chart->dim();
  A->frame = default_frame(A->rank);
  A->anchor.assign(A->rank, std::vector<ScalarExpr>(A->rank, ScalarExpr::zero()));
  for (int i = 0; i < A->rank; ++i) A->anchor[i][i] = ScalarExpr::one();
  require_valid(A, "tangent presentation");
  return A;
}

AlgebroidPtr lie_algebra_point(
    std::vector<std::string> frame,
    std::map<std::pair<int, int>, std::vector<Rational>> structure) {
  auto A = std::make_shared<AlgebroidPresentation>();
  A->chart = make_chart({});
  A->rank = static_cast<int>(frame.size());
  A->frame = std::move(frame);
  A->anchor.assign(A->rank, std::vector<ScalarExpr>{});
  for (auto& [key, v] : structure) {
    std::vector<ScalarExpr> row;
    for (const Rational& q : v) row.push_back(ScalarExpr::rational(q));
    A->structure.emplace(key, std::move(row));
  }
  require_valid(A, "structure constants");
  return A;
}

AlgebroidPtr action_algebroid(
    const ChartPtr& chart, std::vector<std::string> frame,
    std::map<std::pair<int, int>, std::vector<Rational>> structure,
    std::vector<std::vector<ScalarExpr>> fields) {
  auto A = std::make_shared<AlgebroidPresentation>();
  A->chart = chart;
  A->rank = static_cast<int>(frame.size());
  A->frame = std::move(frame);
  A->anchor = std::move(fields);
  for (auto& [key, v] : structure) {
    std::vector<ScalarExpr> row;
    for (const Rational& q : v) row.push_back(ScalarExpr::rational(q));
    A->structure.emplace(key, std::move(row));
  }
  require_valid(A, "the given vector fields");
  return A;
}

}  // namespace nambu
