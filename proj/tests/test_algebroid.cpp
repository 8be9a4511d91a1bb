#include "doctest.h"

#include "nambu/calculus.hpp"
#include "nambu/random_inputs.hpp"

using namespace nambu;

namespace {

AlgebroidPtr tangent_r(int d) {
  std::vector<std::string> coords;
  for (int i = 1; i <= d; ++i) coords.push_back("x" + std::to_string(i));
  return tangent_algebroid(make_chart(coords));
}

// Rank-4 algebra over a point: [X_i, X_4] = i*X_4 for i = 1, 2, 3.
AlgebroidPtr scaling_point_algebra() {
  std::map<std::pair<int, int>, std::vector<Rational>> st;
  st[{0, 3}] = {0, 0, 0, 1};
  st[{1, 3}] = {0, 0, 0, 2};
  st[{2, 3}] = {0, 0, 0, 3};
  return lie_algebra_point({"X1", "X2", "X3", "X4"}, st);
}

AlgebroidPtr su2_point_algebra() {
  std::map<std::pair<int, int>, std::vector<Rational>> st;
  st[{0, 1}] = {0, 0, 1};
  st[{1, 2}] = {1, 0, 0};
  st[{0, 2}] = {0, -1, 0};
  return lie_algebra_point({"X1", "X2", "X3"}, st);
}

ExteriorTensor mv(const AlgebroidPtr& A, std::uint32_t mask) {
  return ExteriorTensor::basis(A, Variance::multivector, mask);
}
ExteriorTensor fm(const AlgebroidPtr& A, std::uint32_t mask) {
  return ExteriorTensor::basis(A, Variance::form, mask);
}
ScalarExpr cx(const AlgebroidPtr& A, int i) {
  return ScalarExpr::coordinate(*A->chart, i);
}

}  // namespace

TEST_CASE("validation passes on the library presentations") {
  CHECK(validate_axioms(tangent_r(3)).passed());
  CHECK(validate_axioms(scaling_point_algebra()).passed());
  CHECK(validate_axioms(su2_point_algebra()).passed());
}

TEST_CASE("validation names a failing triple") {
  auto A = std::make_shared<AlgebroidPresentation>();
  A->chart = make_chart({});
  A->rank = 4;
  A->frame = {"X1", "X2", "X3", "X4"};
  A->anchor.assign(4, {});
  A->structure[{0, 1}] = {ScalarExpr::zero(), ScalarExpr::zero(), ScalarExpr::one(),
                          ScalarExpr::zero()};
  A->structure[{0, 3}] = {ScalarExpr::zero(), ScalarExpr::zero(), ScalarExpr::zero(),
                          ScalarExpr::one()};
  A->structure[{2, 3}] = {ScalarExpr::one(), ScalarExpr::zero(), ScalarExpr::zero(),
                          ScalarExpr::zero()};
  VerificationReport rep = validate_axioms(A);
  CHECK(!rep.passed());
  bool named = false;
  for (const auto& item : rep.items)
    if (item.name == "jacobi")
      for (const auto& w : item.witnesses)
        if (w.where.find("X1") != std::string::npos &&
            w.where.find("X2") != std::string::npos &&
            w.where.find("X4") != std::string::npos)
          named = true;
  CHECK(named);
  CHECK_THROWS_AS(lie_algebra_point({"X1", "X2", "X3", "X4"},
                                    {{{0, 1}, {0, 0, 1, 0}},
                                     {{0, 3}, {0, 0, 0, 1}},
                                     {{2, 3}, {1, 0, 0, 0}}}),
                  domain_error);
}

TEST_CASE("action builder accepts a realizing action and rejects a fake one") {
  auto chart = make_chart({"x"});
  ScalarExpr x = ScalarExpr::coordinate(*chart, 0);
  // sl2 on the line: X1 -> d/dx, X2 -> x d/dx, X3 -> x^2 d/dx
  std::map<std::pair<int, int>, std::vector<Rational>> st;
  st[{0, 1}] = {1, 0, 0};
  st[{1, 2}] = {0, 0, 1};
  st[{0, 2}] = {0, 2, 0};
  auto A = action_algebroid(chart, {"X1", "X2", "X3"}, st,
                            {{ScalarExpr::one()}, {x}, {x * x}});
  CHECK(validate_axioms(A).passed());
  CHECK(A->dim() == 1);
  // swapping two fields breaks the realization
  CHECK_THROWS_AS(action_algebroid(chart, {"X1", "X2", "X3"}, st,
                                   {{x}, {ScalarExpr::one()}, {x * x}}),
                  domain_error);
}

TEST_CASE("cotangent presentation of a symplectic structure validates") {
  auto T = tangent_r(4);
  // x1, x2 pair with x3, x4
  ExteriorTensor pi(T, Variance::multivector, 2);
  pi.set_coeff((1u << 0) | (1u << 2), ScalarExpr::one());
  pi.set_coeff((1u << 1) | (1u << 3), ScalarExpr::one());
  auto C = cotangent_algebroid_of_poisson(pi);
  CHECK(C->rank == 4);
  CHECK(validate_axioms(C).passed());
  CHECK(equal(C->anchor[0][2], ScalarExpr::one()));
  CHECK(equal(C->anchor[2][0], -ScalarExpr::one()));
  CHECK(C->structure.empty());

  // a non-Poisson bivector is rejected with its self-bracket named
  ExteriorTensor bad(T, Variance::multivector, 2);
  bad.set_coeff((1u << 0) | (1u << 1), ScalarExpr::one());
  bad.set_coeff((1u << 0) | (1u << 2), cx(T, 0));
  CHECK_THROWS_WITH_AS(cotangent_algebroid_of_poisson(bad),
                       doctest::Contains("not Poisson"), domain_error);
}

TEST_CASE("linear Poisson bivector gives the expected cotangent structure") {
  auto T = tangent_r(3);
  // components of the dual of su(2)-type: pi^{12} = x3, pi^{23} = x1, pi^{31} = x2
  ExteriorTensor pi(T, Variance::multivector, 2);
  pi.set_coeff(0b011, cx(T, 2));
  pi.set_coeff(0b110, cx(T, 0));
  pi.set_coeff(0b101, -cx(T, 1));
  auto C = cotangent_algebroid_of_poisson(pi);
  CHECK(validate_axioms(C).passed());
  // [dx1, dx2] = d(pi^{12}) = dx3
  CHECK(equal(C->c(0, 1, 2), ScalarExpr::one()));
  CHECK(equal(C->c(0, 1, 0), ScalarExpr::zero()));
}

TEST_CASE("differential on functions is the anchor gradient") {
  auto A = tangent_r(2);
  ScalarExpr f = cx(A, 0) * cx(A, 1);
  ExteriorTensor df = d_A(ExteriorTensor::scalar(A, Variance::form, f));
  ExteriorTensor want(A, Variance::form, 1);
  want.set_coeff(1u << 0, cx(A, 1));
  want.set_coeff(1u << 1, cx(A, 0));
  CHECK(equal(df, want));
}

TEST_CASE("differential on the compact-type point algebra") {
  auto A = su2_point_algebra();
  ExteriorTensor want(A, Variance::form, 2);
  want.set_coeff(0b011, -ScalarExpr::one());
  CHECK(equal(d_A(fm(A, 1u << 2)), want));
  CHECK(d_A(fm(A, 0b111)).is_zero_tensor());
}

TEST_CASE("differential squares to zero") {
  std::vector<AlgebroidPtr> as = {tangent_r(3), scaling_point_algebra(),
                                  su2_point_algebra()};
  RandomGen g(23);
  for (const auto& A : as)
    for (int grade = 0; grade <= A->rank; ++grade)
      for (int t = 0; t < 3; ++t) {
        ExteriorTensor al = random_tensor(g, A, Variance::form, grade, 2);
        CHECK(d_A(d_A(al)).is_zero_tensor());
      }
}

TEST_CASE("differential is a graded derivation of the wedge") {
  auto A = tangent_r(3);
  RandomGen g(29);
  for (int t = 0; t < 6; ++t) {
    int p = static_cast<int>(g.next(3));
    int q = static_cast<int>(g.next(3));
    ExteriorTensor al = random_tensor(g, A, Variance::form, p, 2);
    ExteriorTensor be = random_tensor(g, A, Variance::form, q, 2);
    ExteriorTensor lhs = d_A(wedge(al, be));
    ExteriorTensor rhs = wedge(d_A(al), be) +
                         ((p % 2 == 0) ? wedge(al, d_A(be)) : -wedge(al, d_A(be)));
    CHECK(equal(lhs, rhs));
  }
}

TEST_CASE("section bracket matches the frame structure and the anchor is a morphism") {
  auto A = su2_point_algebra();
  CHECK(equal(section_bracket(mv(A, 1u << 0), mv(A, 1u << 1)), mv(A, 1u << 2)));
  auto T = tangent_r(2);
  ScalarExpr x1 = cx(T, 0);
  ExteriorTensor X = scalar_mul(x1, mv(T, 1u << 1));
  CHECK(equal(section_bracket(mv(T, 1u << 0), X), mv(T, 1u << 1)));
  // anchor of a bracket is the commutator of the anchors
  RandomGen g(31);
  for (int t = 0; t < 4; ++t) {
    ExteriorTensor Y = random_tensor(g, T, Variance::multivector, 1, 2);
    ExteriorTensor Z = random_tensor(g, T, Variance::multivector, 1, 2);
    ScalarExpr f = random_scalar(g, T->chart, {}, 2);
    ScalarExpr lhs = anchor_apply(section_bracket(Y, Z), f);
    ScalarExpr rhs = anchor_apply(Y, anchor_apply(Z, f)) - anchor_apply(Z, anchor_apply(Y, f));
    CHECK(equal(lhs, rhs));
  }
}

TEST_CASE("form Lie derivative basics") {
  auto T = tangent_r(2);
  ScalarExpr x1 = cx(T, 0);
  CHECK(equal(lie_derivative_form(mv(T, 1u << 0), scalar_mul(x1, fm(T, 1u << 1))),
              fm(T, 1u << 1)));
  // rescaling rule: L_{fX} a = f L_X a + d_A f ^ i_X a
  ExteriorTensor X = mv(T, 1u << 1);
  ExteriorTensor al = fm(T, 0b11);
  ExteriorTensor lhs = lie_derivative_form(scalar_mul(x1, X), al);
  ExteriorTensor rhs = scalar_mul(x1, lie_derivative_form(X, al)) +
                       wedge(d_A(ExteriorTensor::scalar(T, Variance::form, x1)),
                             contract_by_section(X, al));
  CHECK(equal(lhs, rhs));
}

TEST_CASE("top coform derivative picks up the negative trace of the adjoint") {
  auto A = scaling_point_algebra();
  ExteriorTensor mu = fm(A, 0b1111);
  // [X1, X4] = X4 is the only bracket touching X1, so the trace is 1
  CHECK(equal(lie_derivative_form(mv(A, 1u << 0), mu), -mu));
  CHECK(equal(lie_derivative_form(mv(A, 1u << 1), mu), scalar_mul(-ScalarExpr::integer(2), mu)));
  CHECK(lie_derivative_form(mv(A, 1u << 3), mu).is_zero_tensor());
}

TEST_CASE("multivector Lie derivative basics") {
  auto T = tangent_r(3);
  ScalarExpr x1 = cx(T, 0);
  CHECK(equal(lie_derivative_multivector(mv(T, 1u << 0), scalar_mul(x1, mv(T, 1u << 1))),
              mv(T, 1u << 1)));
  CHECK(lie_derivative_multivector(mv(T, 1u << 0), ExteriorTensor(T, Variance::multivector, 2))
            .is_zero_tensor());
  // top-grade rescaling: L_{fX} P = f L_X P - rho(X)(f) P
  ExteriorTensor P = mv(T, 0b111);
  ExteriorTensor X = mv(T, 1u << 0);
  ExteriorTensor lhs = lie_derivative_multivector(scalar_mul(x1, X), P);
  ExteriorTensor rhs = scalar_mul(x1, lie_derivative_multivector(X, P)) -
                       scalar_mul(anchor_apply(X, x1), P);
  CHECK(equal(lhs, rhs));
}

TEST_CASE("the two Lie derivative routes agree") {
  // dual-formula route vs bracket route, on random sections and multivectors
  std::vector<AlgebroidPtr> as = {tangent_r(3), su2_point_algebra()};
  RandomGen g(37);
  for (const auto& A : as)
    for (int grade = 0; grade <= A->rank; ++grade)
      for (int t = 0; t < 3; ++t) {
        ExteriorTensor X = random_tensor(g, A, Variance::multivector, 1, 2);
        ExteriorTensor P = random_tensor(g, A, Variance::multivector, grade, 2);
        CHECK(equal(lie_derivative_multivector(X, P), schouten(X, P)));
      }
}

TEST_CASE("bracket behaves on low grades") {
  auto T = tangent_r(2);
  ScalarExpr x1 = cx(T, 0);
  CHECK(equal(schouten(mv(T, 1u << 0), scalar_mul(x1, mv(T, 1u << 1))), mv(T, 1u << 1)));
  ExteriorTensor f = ExteriorTensor::scalar(T, Variance::multivector, x1 * x1);
  ExteriorTensor r = schouten(mv(T, 1u << 0), f);
  CHECK(equal(r.scalar_value(), ScalarExpr::integer(2) * x1));
}

TEST_CASE("bracket is graded antisymmetric") {
  auto T = tangent_r(3);
  ExteriorTensor P = mv(T, 0b011);
  ExteriorTensor Q = scalar_mul(cx(T, 0), mv(T, 0b110));
  // p = q = 2: [P,Q] = -(-1)^{1*1}[Q,P] = [Q,P]... the signed sum vanishes
  ExteriorTensor signednd = schouten(P, Q) - schouten(Q, P);
  CHECK(signednd.is_zero_tensor());
  RandomGen g(41);
  for (int t = 0; t < 6; ++t) {
    int p = static_cast<int>(g.next(4));
    int q = static_cast<int>(g.next(4));
    ExteriorTensor R = random_tensor(g, T, Variance::multivector, p, 2);
    ExteriorTensor S = random_tensor(g, T, Variance::multivector, q, 2);
    ExteriorTensor flip = schouten(S, R);
    ExteriorTensor want =
        ((p - 1) * (q - 1)) % 2 == 0 ? -flip : flip;
    CHECK(equal(schouten(R, S), want));
  }
}

TEST_CASE("bracket is a graded derivation of the wedge in the right slot") {
  auto T = tangent_r(4);
  RandomGen g(43);
  for (int t = 0; t < 6; ++t) {
    int p = 1 + static_cast<int>(g.next(3));
    int q = static_cast<int>(g.next(3));
    int r = static_cast<int>(g.next(3));
    ExteriorTensor P = random_tensor(g, T, Variance::multivector, p, 2);
    ExteriorTensor Q = random_tensor(g, T, Variance::multivector, q, 2);
    ExteriorTensor R = random_tensor(g, T, Variance::multivector, r, 2);
    ExteriorTensor lhs = schouten(P, wedge(Q, R));
    ExteriorTensor second = wedge(Q, schouten(P, R));
    ExteriorTensor rhs = wedge(schouten(P, Q), R) +
                         (((p - 1) * q) % 2 == 0 ? second : -second);
    CHECK(equal(lhs, rhs));
  }
}

TEST_CASE("bracket satisfies the graded Jacobi identity") {
  auto T = tangent_r(3);
  RandomGen g(47);
  for (int t = 0; t < 4; ++t) {
    int p = 1 + static_cast<int>(g.next(2));
    int q = 1 + static_cast<int>(g.next(2));
    int r = 1 + static_cast<int>(g.next(2));
    ExteriorTensor P = random_tensor(g, T, Variance::multivector, p, 1);
    ExteriorTensor Q = random_tensor(g, T, Variance::multivector, q, 1);
    ExteriorTensor R = random_tensor(g, T, Variance::multivector, r, 1);
    // [[P,Q],R] = [P,[Q,R]] - (-1)^{(p-1)(q-1)} [Q,[P,R]]
    ExteriorTensor lhs = schouten(schouten(P, Q), R);
    ExteriorTensor second = schouten(Q, schouten(P, R));
    ExteriorTensor rhs = schouten(P, schouten(Q, R)) +
                         (((p - 1) * (q - 1)) % 2 == 0 ? -second : second);
    CHECK(equal(lhs, rhs));
  }
}

TEST_CASE("generalized Lie derivative extends the grade-1 case") {
  auto T = tangent_r(3);
  RandomGen g(53);
  for (int t = 0; t < 4; ++t) {
    ExteriorTensor X = random_tensor(g, T, Variance::multivector, 1, 2);
    ExteriorTensor al = random_tensor(g, T, Variance::form, 2, 2);
    CHECK(equal(generalized_lie_derivative(X, al), lie_derivative_form(X, al)));
  }
  CHECK(generalized_lie_derivative(mv(T, 0b011), fm(T, 0b111)).is_zero_tensor());
}

TEST_CASE("magic formula and operator identities") {
  std::vector<AlgebroidPtr> as = {tangent_r(3), su2_point_algebra()};
  RandomGen g(59);
  for (const auto& A : as)
    for (int t = 0; t < 4; ++t) {
      int n = static_cast<int>(g.next(static_cast<std::uint64_t>(A->rank) + 1));
      ExteriorTensor X = random_tensor(g, A, Variance::multivector, 1, 2);
      ExteriorTensor Y = random_tensor(g, A, Variance::multivector, 1, 2);
      ExteriorTensor al = random_tensor(g, A, Variance::form, n, 2);
      // L_X = i_X d_A + d_A i_X
      CHECK(equal(lie_derivative_form(X, al),
                  contract_by_section(X, d_A(al)) + d_A(contract_by_section(X, al))));
      // [L_X, i_Y] = i_{[X,Y]}
      CHECK(equal(lie_derivative_form(X, contract_by_section(Y, al)) -
                      contract_by_section(Y, lie_derivative_form(X, al)),
                  contract_by_section(section_bracket(X, Y), al)));
      // L_X d_A = d_A L_X
      CHECK(equal(lie_derivative_form(X, d_A(al)), d_A(lie_derivative_form(X, al))));
      // [L_X, L_Y] = L_{[X,Y]}
      CHECK(equal(lie_derivative_form(X, lie_derivative_form(Y, al)) -
                      lie_derivative_form(Y, lie_derivative_form(X, al)),
                  lie_derivative_form(section_bracket(X, Y), al)));
    }
}

TEST_CASE("pushforward through the anchor") {
  auto chart = make_chart({"x"});
  ScalarExpr x = ScalarExpr::coordinate(*chart, 0);
  std::map<std::pair<int, int>, std::vector<Rational>> st;
  st[{0, 1}] = {1, 0, 0};
  st[{1, 2}] = {0, 0, 1};
  st[{0, 2}] = {0, 2, 0};
  auto A = action_algebroid(chart, {"X1", "X2", "X3"}, st,
                            {{ScalarExpr::one()}, {x}, {x * x}});
  auto T = tangent_algebroid(chart);
  ExteriorTensor X2 = mv(A, 1u << 1);
  ExteriorTensor img = anchor_pushforward(X2, T);
  CHECK(equal(img, scalar_mul(x, mv(T, 1u << 0))));
  // grade-2 pushforward through a rank-1 target clamps to zero
  CHECK(anchor_pushforward(wedge(mv(A, 1u << 0), X2), T).is_zero_tensor());
}
