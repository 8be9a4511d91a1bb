#include <bit>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "nambu/modular.hpp"
#include "nambu/random_inputs.hpp"

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

AlgebroidPtr scaling_point_algebra() {
  std::map<std::pair<int, int>, std::vector<Rational>> st;
  st[{0, 3}] = {0, 0, 0, 1};
  st[{1, 3}] = {0, 0, 0, 2};
  st[{2, 3}] = {0, 0, 0, 3};
  return lie_algebra_point({"X1", "X2", "X3", "X4"}, st);
}

NambuStructure verified(ExteriorTensor pi) {
  NambuStructure P(std::move(pi));
  REQUIRE(check_nambu(P).passed());
  return P;
}

// independently expanded boundary of a decomposable multivector:
//   (-1)^k boundary(X_1 ^ .. ^ X_k) = sum_i (-1)^i div(X_i) X_(without i)
//     + sum_{i<j} (-1)^{i+j} [X_i, X_j] ^ X_(without i,j)
ExteriorTensor boundary_oracle(const VolumeSection& mu,
                               const std::vector<ExteriorTensor>& xs) {
  const int k = static_cast<int>(xs.size());
  const auto& A = mu.algebroid;
  auto wedge_except = [&](int skip1, int skip2) {
    ExteriorTensor w = ExteriorTensor::scalar(A, Variance::multivector,
                                              ScalarExpr::one());
    for (int t = 0; t < k; ++t)
      if (t != skip1 && t != skip2) w = wedge(w, xs[t]);
    return w;
  };
  ExteriorTensor acc(A, Variance::multivector, k - 1);
  for (int i = 0; i < k; ++i) {
    ExteriorTensor term = scalar_mul(divergence(mu, xs[i]), wedge_except(i, -1));
    acc = (i % 2 == 0) ? acc - term : acc + term;
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      ExteriorTensor term =
          wedge(section_bracket(xs[i], xs[j]), wedge_except(i, j));
      acc = ((i + j) % 2 == 0) ? acc + term : acc - term;
    }
  return (k % 2 == 0) ? acc : -acc;
}

}  // namespace

TEST_CASE("volume construction and nonvanishing detection") {
  auto A = tangent_r(3);
  CHECK_THROWS_AS(make_volume(A, ScalarExpr::zero(), true), domain_error);
  CHECK(make_volume(A, ScalarExpr::integer(2), false).nonvanishing);
  CHECK(make_volume(A, exp(cx(A, 0)), false).nonvanishing);
  ScalarExpr bump = ScalarExpr::one() + cx(A, 0) * cx(A, 0);
  CHECK(!make_volume(A, bump, false).nonvanishing);
  CHECK(make_volume(A, bump, true).nonvanishing);
  VolumeSection mu = make_volume(A, ScalarExpr::one(), false);
  CHECK(mu.top_mask() == 0b111u);
  CHECK(equal(mu.form(), fm(A, 0b111)));
}

TEST_CASE("star values and the inverse on every grade") {
  auto A = tangent_r(3);
  VolumeSection mu = make_volume(A, ScalarExpr::one(), false);
  CHECK(equal(star(mu, mv(A, 0b001)), fm(A, 0b110)));
  CHECK(equal(star(mu, ExteriorTensor::scalar(A, Variance::multivector,
                                              ScalarExpr::one())),
              mu.form()));

  ScalarExpr bump = ScalarExpr::one() + cx(A, 0) * cx(A, 0);
  VolumeSection nu = make_volume(A, bump, true);
  auto L = scaling_point_algebra();
  VolumeSection pt = make_volume(L, ScalarExpr::one(), false);

  RandomGen g(911);
  for (int grade = 0; grade <= 3; ++grade)
    for (int trial = 0; trial < 3; ++trial) {
      ExteriorTensor P = random_tensor(g, A, Variance::multivector, grade, 2);
      CHECK(equal(star_inv(mu, star(mu, P)), P));
      CHECK(equal(star_inv(nu, star(nu, P)), P));
      ExteriorTensor a = random_tensor(g, A, Variance::form, grade, 2);
      CHECK(equal(star(mu, star_inv(mu, a)), a));
    }
  for (int grade = 0; grade <= 4; ++grade) {
    ExteriorTensor P = random_tensor(g, L, Variance::multivector, grade, 2);
    CHECK(equal(star_inv(pt, star(pt, P)), P));
  }
  CHECK_THROWS_AS(star(mu, fm(A, 0b001)), domain_error);
  CHECK_THROWS_AS(star_inv(mu, mv(A, 0b001)), domain_error);
}

TEST_CASE("boundary values and the square-zero property") {
  auto A = tangent_r(3);
  VolumeSection mu = make_volume(A, ScalarExpr::one(), false);
  ExteriorTensor xdx = scalar_mul(cx(A, 0), mv(A, 0b001));
  ExteriorTensor b = boundary(mu, xdx);
  CHECK(b.grade() == 0);
  CHECK((b.scalar_value() - ScalarExpr::one()).is_zero_expr());

  for (const ScalarExpr& u : {ScalarExpr::one(), exp(cx(A, 0))}) {
    VolumeSection vol = make_volume(A, u, false);
    NambuStructure P = maximal_from_volume(vol);
    CHECK(boundary(vol, P.tensor()).is_zero_tensor());
  }

  ScalarExpr bump = ScalarExpr::one() + cx(A, 0) * cx(A, 0);
  VolumeSection nu = make_volume(A, bump, true);
  RandomGen g(517);
  for (int grade = 0; grade <= 3; ++grade)
    for (int trial = 0; trial < 3; ++trial) {
      ExteriorTensor P = random_tensor(g, A, Variance::multivector, grade, 2);
      CHECK(boundary(nu, boundary(nu, P)).is_zero_tensor());
      CHECK(boundary(mu, boundary(mu, P)).is_zero_tensor());
    }
}

TEST_CASE("boundary against the divergence-and-brackets expansion") {
  auto L = scaling_point_algebra();
  VolumeSection pt = make_volume(L, ScalarExpr::one(), false);
  ExteriorTensor x1 = mv(L, 0b0001);
  ExteriorTensor x2 = mv(L, 0b0010);
  ExteriorTensor x3 = mv(L, 0b0100);
  ExteriorTensor x4 = mv(L, 0b1000);

  CHECK((divergence(pt, x1) + ScalarExpr::one()).is_zero_expr());
  CHECK((divergence(pt, x2) + ScalarExpr::integer(2)).is_zero_expr());
  CHECK(divergence(pt, x4).is_zero_expr());

  ExteriorTensor b12 = boundary(pt, wedge(x1, x2));
  CHECK(equal(b12, x2 - scalar_mul(ScalarExpr::integer(2), x1)));
  CHECK(equal(b12, boundary_oracle(pt, {x1, x2})));
  CHECK(equal(boundary(pt, wedge(x1, x4)), boundary_oracle(pt, {x1, x4})));
  CHECK(equal(boundary(pt, wedge(wedge(x1, x2), x3)),
              boundary_oracle(pt, {x1, x2, x3})));

  auto A = tangent_r(3);
  VolumeSection muexp = make_volume(A, exp(cx(A, 0)), false);
  ExteriorTensor y1 = scalar_mul(cx(A, 0), mv(A, 0b001));
  ExteriorTensor y2 = scalar_mul(cx(A, 1), mv(A, 0b010)) + mv(A, 0b100);
  CHECK(equal(boundary(muexp, wedge(y1, y2)), boundary_oracle(muexp, {y1, y2})));
}

TEST_CASE("star conjugates the Lie derivative up to a divergence term") {
  auto A = tangent_r(3);
  VolumeSection mu = make_volume(A, exp(cx(A, 1)), false);
  RandomGen g(333);
  for (int grade = 0; grade <= 3; ++grade) {
    ExteriorTensor X = random_tensor(g, A, Variance::multivector, 1, 2);
    ExteriorTensor P = random_tensor(g, A, Variance::multivector, grade, 2);
    ExteriorTensor lhs = lie_derivative_form(X, star(mu, P));
    ExteriorTensor rhs = star(mu, lie_derivative_multivector(X, P)) +
                         scalar_mul(divergence(mu, X), star(mu, P));
    CHECK(equal(lhs, rhs));
  }
  ExteriorTensor X = scalar_mul(cx(A, 0) * cx(A, 1), mv(A, 0b010));
  ExteriorTensor lhs = lie_derivative_form(X, mu.form());
  CHECK(equal(lhs, scalar_mul(divergence(mu, X), mu.form())));
}

TEST_CASE("contraction identity for the boundary") {
  auto A = tangent_r(4);
  VolumeSection mu = make_volume(A, ScalarExpr::one(), false);
  RandomGen g(4242);
  for (int k = 1; k <= 4; ++k)
    for (std::uint32_t am = 0; am < 16; ++am) {
      if (std::popcount(am) != k - 1) continue;
      ExteriorTensor P = random_tensor(g, A, Variance::multivector, k, 2);
      CHECK(divergence_identity_check(mu, P, fm(A, am)).passed());
    }

  // grade-1 base case with a function as the test form
  ExteriorTensor X = scalar_mul(cx(A, 0) * cx(A, 1), mv(A, 0b0010));
  ExteriorTensor f = ExteriorTensor::scalar(A, Variance::form, cx(A, 1));
  CHECK(divergence_identity_check(mu, X, f).passed());

  ExteriorTensor zero3(A, Variance::multivector, 3);
  CHECK(divergence_identity_check(mu, zero3, fm(A, 0b0011)).passed());
  CHECK_THROWS_AS(divergence_identity_check(mu, X, fm(A, 0b0011)), domain_error);
}

TEST_CASE("maximal structures are unimodular") {
  auto A = tangent_r(3);
  for (const ScalarExpr& u : {ScalarExpr::one(), exp(cx(A, 0))}) {
    VolumeSection mu = make_volume(A, u, false);
    NambuStructure P = maximal_from_volume(mu);
    ModularTensor M = modular_tensor(P, mu);
    CHECK(M.tensor.is_zero_tensor());
    CHECK(modular_property_checks(M).passed());
  }
}

TEST_CASE("function multiples of the maximal structure") {
  auto A = tangent_r(3);
  VolumeSection mu = make_volume(A, ScalarExpr::one(), false);
  NambuStructure Pmu = maximal_from_volume(mu);
  ScalarExpr f = cx(A, 0);
  NambuStructure Pf = verified(scalar_mul(f, Pmu.tensor()));
  ModularTensor M = modular_tensor(Pf, mu);
  CHECK(equal(M.tensor, mv(A, 0b110)));
  ExteriorTensor df = d_A(ExteriorTensor::scalar(A, Variance::form, f));
  ExteriorTensor viasharp = contract_by_form(df, Pmu.tensor());
  CHECK(equal(M.tensor, viasharp));
  CHECK(modular_property_checks(M).passed());
  CHECK(cocycle_check(M).passed());
}

TEST_CASE("modular tensor of the point-base scaling algebra") {
  auto L = scaling_point_algebra();
  VolumeSection mu = make_volume(L, ScalarExpr::one(), false);
  NambuStructure P = verified(mv(L, 0b0111));
  ModularTensor M = modular_tensor(P, mu);
  ScalarExpr v23 = pairing(M.tensor, fm(L, 0b0110));
  ScalarExpr v13 = pairing(M.tensor, fm(L, 0b0101));
  ScalarExpr v12 = pairing(M.tensor, fm(L, 0b0011));
  CHECK((v23 + ScalarExpr::one()).is_zero_expr());
  CHECK((v13 - ScalarExpr::integer(2)).is_zero_expr());
  CHECK((v12 + ScalarExpr::integer(3)).is_zero_expr());
  CHECK(modular_property_checks(M).passed());
  CHECK(cocycle_check(M).passed());
}

TEST_CASE("modular tensor preconditions") {
  auto A = tangent_r(3);
  VolumeSection mu = make_volume(A, ScalarExpr::one(), false);
  NambuStructure raw(mv(A, 0b111));
  CHECK_THROWS_AS(modular_tensor(raw, mu), domain_error);
  ScalarExpr bump = ScalarExpr::one() + cx(A, 0) * cx(A, 0);
  VolumeSection undeclared = make_volume(A, bump, false);
  NambuStructure P = verified(mv(A, 0b111));
  CHECK_THROWS_AS(modular_tensor(P, undeclared), domain_error);
  auto B = tangent_r(4);
  VolumeSection other = make_volume(B, ScalarExpr::one(), false);
  CHECK_THROWS_AS(modular_tensor(P, other), domain_error);
}

TEST_CASE("volume rescaling shifts the modular tensor by an exact term") {
  auto A = tangent_r(3);
  VolumeSection mu = make_volume(A, ScalarExpr::one(), false);
  NambuStructure P = maximal_from_volume(mu);
  ModularTensor M = modular_tensor(P, mu);

  ModularTensor same = volume_change(M, ScalarExpr::zero());
  CHECK(equal(same.tensor, M.tensor));

  ModularTensor shifted = volume_change(M, cx(A, 0));
  CHECK(equal(shifted.tensor, mv(A, 0b110)));
  CHECK(modular_property_checks(shifted).passed());

  auto L = scaling_point_algebra();
  VolumeSection pt = make_volume(L, ScalarExpr::one(), false);
  NambuStructure Q = verified(mv(L, 0b0111));
  ModularTensor MQ = modular_tensor(Q, pt);
  ModularTensor MQ2 = volume_change(MQ, ScalarExpr::symbol("s"));
  CHECK(equal(MQ2.tensor, MQ.tensor));
}

TEST_CASE("modular cocycle residual under the comparison bracket is only reported") {
  auto L = scaling_point_algebra();
  VolumeSection pt = make_volume(L, ScalarExpr::one(), false);
  NambuStructure P = verified(mv(L, 0b0111));
  ModularTensor M = modular_tensor(P, pt);
  ExteriorTensor a = scalar_mul(ScalarExpr::symbol("u"), fm(L, 0b0011));
  ExteriorTensor b = scalar_mul(ScalarExpr::symbol("v"), fm(L, 0b0101));
  ScalarExpr lhs = pairing(M.tensor, wade_bracket(P, a, b));
  ScalarExpr rhs = anchor_apply(sharp(P, a), pairing(M.tensor, b)) -
                   anchor_apply(sharp(P, b), pairing(M.tensor, a));
  INFO("comparison-bracket residual: " << to_string(lhs - rhs));
  CHECK_NOTHROW((void)(lhs - rhs));
}

TEST_CASE("subordinate structures contract the modular tensor") {
  auto A = tangent_r(4);
  VolumeSection mu = make_volume(A, ScalarExpr::one(), false);
  NambuStructure P = verified(mv(A, 0b1111));
  CHECK(subordinate_modular_check(P, fm(A, 0b1000), mu).passed());
  CHECK(subordinate_modular_check(P, scalar_mul(cx(A, 3), fm(A, 0b1000)), mu)
            .passed());

  auto B = tangent_r(5);
  VolumeSection nu = make_volume(B, ScalarExpr::one(), false);
  NambuStructure Q = verified(mv(B, 0b01111));
  CHECK(subordinate_modular_check(Q, fm(B, 0b10000), nu).passed());

  VolumeSection wavy = make_volume(A, exp(cx(A, 0)), false);
  NambuStructure R = maximal_from_volume(wavy);
  CHECK(subordinate_modular_check(R, fm(A, 0b0010), wavy).passed());
}

TEST_CASE("Hamiltonian invariance of the corrected volume") {
  auto A = tangent_r(3);
  VolumeSection mu = make_volume(A, ScalarExpr::one(), false);
  NambuStructure Pmu = maximal_from_volume(mu);
  CHECK(hamiltonian_invariance_check(Pmu, mu, ScalarExpr::zero()).passed());

  NambuStructure Pf = verified(scalar_mul(exp(cx(A, 0)), Pmu.tensor()));
  VerificationReport good = hamiltonian_invariance_check(Pf, mu, cx(A, 0));
  CHECK(good.passed());

  VerificationReport bad = hamiltonian_invariance_check(Pf, mu, cx(A, 1));
  CHECK(!bad.passed());
  bool saw_skip = false;
  for (const auto& item : bad.items)
    if (item.status == CheckStatus::skipped) saw_skip = true;
  CHECK(saw_skip);
}
