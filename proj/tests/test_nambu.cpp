#include <bit>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "nambu/nambu.hpp"

using namespace nambu;

namespace {

AlgebroidPtr tangent_r(int d) {
  std::vector<std::string> names;
  for (int i = 1; i <= d; ++i) names.push_back("x" + std::to_string(i));
  return tangent_algebroid(make_chart(names));
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

// [X_i, X_4] = i * X_4 for i = 1..3, over a point.
AlgebroidPtr scaling_point_algebra() {
  std::map<std::pair<int, int>, std::vector<Rational>> st;
  st[{0, 3}] = {0, 0, 0, 1};
  st[{1, 3}] = {0, 0, 0, 2};
  st[{2, 3}] = {0, 0, 0, 3};
  return lie_algebra_point({"X1", "X2", "X3", "X4"}, st);
}

NambuStructure verified(ExteriorTensor pi, bool allow2 = false) {
  NambuStructure P(std::move(pi), allow2);
  VerificationReport rep = check_nambu(P);
  REQUIRE(rep.passed());
  return P;
}

}  // namespace

TEST_CASE("sharp contracts against the defining pairing") {
  auto A = tangent_r(3);
  NambuStructure P(mv(A, 0b111));
  CHECK(equal(sharp(P, fm(A, 0b011)), mv(A, 0b100)));
  CHECK(equal(sharp(P, fm(A, 0b110)), mv(A, 0b001)));
  ExteriorTensor zero2(A, Variance::form, 2);
  CHECK(sharp(P, zero2).is_zero_tensor());
  // pairing oracle: <sharp(alpha), gamma> = <Pi, alpha ^ gamma>
  for (std::uint32_t am : {0b011u, 0b101u, 0b110u})
    for (int k = 0; k < 3; ++k) {
      ScalarExpr lhs = pairing(sharp(P, fm(A, am)), fm(A, 1u << k));
      ScalarExpr rhs = pairing(P.tensor(), wedge(fm(A, am), fm(A, 1u << k)));
      CHECK((lhs - rhs).is_zero_expr());
    }
  CHECK_THROWS_AS(sharp(P, fm(A, 0b001)), domain_error);
}

TEST_CASE("order bounds and the order-2 gate") {
  auto A = tangent_r(4);
  CHECK_THROWS_AS(NambuStructure(mv(A, 0b0011)), domain_error);
  CHECK_NOTHROW(NambuStructure(mv(A, 0b0011), true));
  auto B = tangent_r(2);
  CHECK_THROWS_AS(NambuStructure(mv(B, 0b11) , false), domain_error);
  ExteriorTensor form3(A, Variance::form, 3);
  CHECK_THROWS_AS(NambuStructure{form3}, domain_error);
}

TEST_CASE("decomposable trivector on the plane field passes the check") {
  auto A = tangent_r(5);
  NambuStructure P(mv(A, 0b00111));
  VerificationReport rep = check_nambu(P);
  CHECK(rep.passed());
  CHECK(P.status() == NambuStatus::verified);
  CHECK(check_pointwise_decomposability(P).passed());
  CHECK(check_wade(P).passed());
}

TEST_CASE("sum of disjoint trivectors is refuted with a concrete witness") {
  auto A = tangent_r(6);
  NambuStructure P(mv(A, 0b000111) + mv(A, 0b111000));
  VerificationReport rep = check_nambu(P);
  CHECK(!rep.passed());
  CHECK(P.status() == NambuStatus::refuted);
  REQUIRE(P.refutation().has_value());
  CHECK(!P.refutation()->residual.is_zero_tensor());
  CHECK(!check_pointwise_decomposability(P).passed());
  CHECK(!check_wade(P).passed());
}

TEST_CASE("order-2 experiment: the symplectic bivector fails with the known witness") {
  auto A = tangent_r(4);  // coordinates x1, x2, x3, x4 read as (x1, y1, x2, y2)
  NambuStructure P(mv(A, 0b0011) + mv(A, 0b1100), true);
  VerificationReport rep = check_nambu(P);
  CHECK(!rep.passed());
  REQUIRE(P.refutation().has_value());
  // first concretized failure: alpha = x2 dx1, residual the second plane
  ExteriorTensor expect_alpha = scalar_mul(cx(A, 1), fm(A, 0b0001));
  CHECK(equal(P.refutation()->alpha, expect_alpha));
  CHECK(equal(P.refutation()->residual, mv(A, 0b1100)));
}

TEST_CASE("zero candidate passes every checker") {
  auto A = tangent_r(5);
  NambuStructure P(ExteriorTensor(A, Variance::multivector, 3));
  CHECK(check_nambu(P).passed());
  CHECK(P.status() == NambuStatus::verified);
  CHECK(check_wade(P).passed());
  CHECK(check_pointwise_decomposability(P).passed());
}

TEST_CASE("scalar multiples of a decomposable monomial stay decomposable") {
  auto A = tangent_r(3);
  NambuStructure P(scalar_mul(cx(A, 0), mv(A, 0b111)));
  CHECK(check_pointwise_decomposability(P).passed());
  CHECK(check_nambu(P).passed());
}

TEST_CASE("agreement of the two checkers over the built-in examples") {
  auto r5 = tangent_r(5);
  auto r6 = tangent_r(6);
  auto r3 = tangent_r(3);
  std::vector<ExteriorTensor> cases = {
      mv(r5, 0b00111),
      mv(r6, 0b000111) + mv(r6, 0b111000),
      scalar_mul(cx(r3, 0), mv(r3, 0b111)),
      scalar_mul(exp(cx(r3, 0)), mv(r3, 0b111)),
  };
  for (const ExteriorTensor& pi : cases) {
    NambuStructure P(pi);
    bool ours = check_nambu(P).passed();
    bool wade = check_wade(P).passed();
    bool decomposable = check_pointwise_decomposability(P).passed();
    if (decomposable) CHECK(ours == wade);
  }
}

TEST_CASE("subordinate structures: contraction values, closedness, order floor") {
  auto A = tangent_r(4);
  NambuStructure P = verified(mv(A, 0b1111));
  NambuStructure sub = subordinate(P, {fm(A, 0b1000)});
  CHECK(equal(sub.tensor(), -mv(A, 0b0111)));
  CHECK(sub.status() == NambuStatus::verified);
  CHECK(check_nambu(sub).passed());

  // linear combination argument
  NambuStructure sub2 = subordinate(P, {fm(A, 0b0001) + fm(A, 0b0010)});
  CHECK(check_nambu(sub2).passed());

  // closed non-constant coefficient
  NambuStructure sub3 = subordinate(P, {scalar_mul(cx(A, 3), fm(A, 0b1000))});
  CHECK(equal(sub3.tensor(), scalar_mul(-cx(A, 3), mv(A, 0b0111))));

  CHECK_THROWS_AS(subordinate(P, {scalar_mul(cx(A, 1), fm(A, 0b0001))}),
                  domain_error);
  auto B = tangent_r(5);
  NambuStructure Q = verified(mv(B, 0b01111));
  NambuStructure null_sub = subordinate(Q, {fm(B, 0b10000)});
  CHECK(null_sub.tensor().is_zero_tensor());
  NambuStructure low = verified(mv(B, 0b00111));
  CHECK_THROWS_AS(subordinate(low, {fm(B, 0b00001)}), domain_error);

  NambuStructure unchecked(mv(A, 0b1111));
  CHECK_THROWS_AS(subordinate(unchecked, {fm(A, 0b1000)}), domain_error);
}

TEST_CASE("Hamiltonian sections of the coordinate trivector") {
  auto A = tangent_r(3);
  NambuStructure P = verified(mv(A, 0b111));
  CHECK(equal(hamiltonian_section(P, {cx(A, 0), cx(A, 1)}), mv(A, 0b100)));
  CHECK(equal(hamiltonian_section(P, {cx(A, 1), cx(A, 0)}), -mv(A, 0b100)));
  CHECK(hamiltonian_section(P, {ScalarExpr::one(), cx(A, 1)}).is_zero_tensor());
  CHECK_THROWS_AS(hamiltonian_section(P, {cx(A, 0)}), domain_error);
}

TEST_CASE("induced bracket on the base: coordinate values and the zero-anchor case") {
  auto A = tangent_r(3);
  NambuStructure P = verified(mv(A, 0b111));
  ScalarExpr b = induced_base_bracket(P, {cx(A, 0), cx(A, 1), cx(A, 2)});
  CHECK((b - ScalarExpr::one()).is_zero_expr());
  ScalarExpr swapped = induced_base_bracket(P, {cx(A, 1), cx(A, 0), cx(A, 2)});
  CHECK((swapped + ScalarExpr::one()).is_zero_expr());

  auto L = scaling_point_algebra();
  NambuStructure Q = verified(mv(L, 0b0111));
  ScalarExpr z = induced_base_bracket(
      Q, {ScalarExpr::symbol("f"), ScalarExpr::symbol("g"), ScalarExpr::symbol("h")});
  CHECK(z.is_zero_expr());
}

TEST_CASE("fundamental identity of the induced bracket with uninterpreted functions") {
  auto A = tangent_r(3);
  NambuStructure P = verified(scalar_mul(exp(cx(A, 0)), mv(A, 0b111)));
  std::vector<ScalarExpr> fs = {ScalarExpr::symbol("f1"), ScalarExpr::symbol("f2")};
  std::vector<ScalarExpr> gs = {ScalarExpr::symbol("g1"), ScalarExpr::symbol("g2"),
                                ScalarExpr::symbol("g3")};
  CHECK(fundamental_identity_check(P, fs, gs).passed());

  auto B = tangent_r(6);
  NambuStructure bad(mv(B, 0b000111) + mv(B, 0b111000));
  CHECK(!fundamental_identity_check(bad, fs, gs).passed());
  CHECK_THROWS_AS(fundamental_identity_check(P, gs, gs), domain_error);
}

TEST_CASE("maximal structures from volumes") {
  auto A = tangent_r(3);
  VolumeSection mu = make_volume(A, ScalarExpr::one(), false);
  NambuStructure P = maximal_from_volume(mu);
  CHECK(equal(P.tensor(), mv(A, 0b111)));
  CHECK(P.status() == NambuStatus::verified);
  CHECK((pairing(P.tensor(), mu.form()) - ScalarExpr::one()).is_zero_expr());

  VolumeSection nu = make_volume(A, exp(cx(A, 0)), false);
  NambuStructure Q = maximal_from_volume(nu);
  CHECK(equal(Q.tensor(), scalar_mul(exp(-cx(A, 0)), mv(A, 0b111))));
  CHECK((pairing(Q.tensor(), nu.form()) - ScalarExpr::one()).is_zero_expr());
  CHECK(check_nambu(Q).passed());

  // any function multiple of a maximal structure still passes
  NambuStructure R(scalar_mul(cx(A, 1), Q.tensor()));
  CHECK(check_nambu(R).passed());

  auto B = tangent_r(2);
  VolumeSection flat = make_volume(B, ScalarExpr::one(), false);
  CHECK_THROWS_AS(maximal_from_volume(flat), domain_error);
}

TEST_CASE("pushforward to the base and the intertwining of the two sharps") {
  // symplectic pairing of x1,x2 with x3,x4
  auto chart = make_chart({"x1", "x2", "x3", "x4"});
  auto T = tangent_algebroid(chart);
  ExteriorTensor pi(T, Variance::multivector, 2);
  pi.set_coeff(0b0101, ScalarExpr::one());
  pi.set_coeff(0b1010, ScalarExpr::one());
  AlgebroidPtr A = cotangent_algebroid_of_poisson(pi);

  VolumeSection mu = make_volume(A, ScalarExpr::one(), false);
  NambuStructure P = maximal_from_volume(mu);
  ExteriorTensor lambda = pushforward_base_tensor(P);
  CHECK(equal(lambda, ExteriorTensor::basis(T, Variance::multivector, 0b1111)));

  for (std::uint32_t bm = 0; bm < 16; ++bm) {
    if (std::popcount(bm) != 3) continue;
    ExteriorTensor beta = ExteriorTensor::basis(T, Variance::form, bm);
    ExteriorTensor lhs = contract_by_form(beta, lambda);
    ExteriorTensor rhs =
        anchor_pushforward(sharp(P, anchor_pullback(beta, A)), T);
    CHECK(equal(lhs, rhs));
  }
}

TEST_CASE("point-base scaling algebra carries the coordinate trivector") {
  auto L = scaling_point_algebra();
  NambuStructure P(mv(L, 0b0111));
  CHECK(check_nambu(P).passed());
  CHECK(check_wade(P).passed());
  CHECK(check_pointwise_decomposability(P).passed());
}
