#include "doctest.h"

#include "nambu/scalar.hpp"

using namespace nambu;

namespace {

const std::set<std::string> kNoSyms;

ScalarExpr parse3(const std::string& t, const std::set<std::string>& syms = kNoSyms) {
  static ChartPtr chart = make_chart({"x1", "x2", "x3"});
  return parse_expr(t, *chart, syms);
}

const Chart& chart3() {
  static ChartPtr chart = make_chart({"x1", "x2", "x3"});
  return *chart;
}

}  // namespace

TEST_CASE("rational arithmetic normalizes") {
  auto e = parse3("2/4 + 1/4");
  Rational q;
  REQUIRE(e.as_rational(&q));
  CHECK(q == Rational(3, 4));

  CHECK(parse3("1/3 + 2/3 - 1").is_zero_expr());
  CHECK(parse3("(x1 + x2)^2 - x1^2 - 2*x1*x2 - x2^2").is_zero_expr());
}

TEST_CASE("division gives exact rational functions") {
  auto e = parse3("(x1^2 - x2^2)/(x1 - x2) - x1 - x2");
  CHECK(e.is_zero_expr());

  // Cross-multiplied equality is exact even when no cancellation happened.
  auto a = parse3("x1/(x1*x2 + x1)");
  auto b = parse3("1/(x2 + 1)");
  CHECK(equal(a, b));

  CHECK_THROWS_AS(parse3("1/(x1 - x1)"), parse_error);
}

TEST_CASE("powers, including negative ones") {
  CHECK(parse3("x1^3 * x1^-2 - x1").is_zero_expr());
  CHECK(equal(parse3("(x1 + 1)^-1"), parse3("1/(x1 + 1)")));
  CHECK_THROWS_AS(parse3("x1^x2"), parse_error);
}

TEST_CASE("partial derivatives on polynomials") {
  auto e = parse3("x1^2*x2 + 5*x3");
  CHECK(equal(partial(e, chart3(), 0), parse3("2*x1*x2")));
  CHECK(equal(partial(e, chart3(), 1), parse3("x1^2")));
  CHECK(equal(partial(e, chart3(), 2), parse3("5")));
}

TEST_CASE("partial derivative satisfies the Leibniz rule") {
  auto f = parse3("x1*x2 + x3^2");
  auto g = parse3("x2 - 1/(x1 + 2)");
  auto lhs = partial(f * g, chart3(), 0);
  auto rhs = partial(f, chart3(), 0) * g + f * partial(g, chart3(), 0);
  CHECK(equal(lhs, rhs));
}

TEST_CASE("quotient rule") {
  auto f = parse3("x1^2 + x2");
  auto g = parse3("x3 + 1");
  auto q = f / g;
  auto expect = (partial(f, chart3(), 2) * g - f * partial(g, chart3(), 2)) / (g * g);
  CHECK(equal(partial(q, chart3(), 2), expect));
}

TEST_CASE("exponentials fold multiplicatively") {
  auto x1 = ScalarExpr::coordinate(chart3(), 0);
  auto x2 = ScalarExpr::coordinate(chart3(), 1);
  CHECK((exp(x1) * exp(x2) - exp(x1 + x2)).is_zero_expr());
  CHECK((exp(x1) * exp(-x1) - ScalarExpr::one()).is_zero_expr());
  CHECK(equal(pow(exp(x1), 3), exp(x1 * ScalarExpr::integer(3))));
  CHECK(exp(ScalarExpr::zero()).is_one_expr());

  // 1/exp(u) normalizes into the numerator.
  auto inv = ScalarExpr::one() / exp(x1);
  CHECK(equal(inv, exp(-x1)));
}

TEST_CASE("exp differentiates through the chain rule") {
  auto x1 = ScalarExpr::coordinate(chart3(), 0);
  auto x2 = ScalarExpr::coordinate(chart3(), 1);
  auto u = x1 * x2;
  CHECK(equal(partial(exp(u), chart3(), 0), x2 * exp(u)));

  // exp(x1) and exp(x2) stay independent: their difference is not zero.
  CHECK(is_zero(exp(x1) - exp(x2)) == ZeroDecision::nonzero);
}

TEST_CASE("function symbols carry formal partials") {
  auto g = ScalarExpr::symbol("g");
  auto d1 = partial(g, chart3(), 0);
  auto d12 = partial(d1, chart3(), 1);
  auto d21 = partial(partial(g, chart3(), 1), chart3(), 0);
  CHECK(equal(d12, d21));  // mixed partials commute by construction
  CHECK(is_zero(d1) == ZeroDecision::nonzero);
  CHECK(to_string(d1) == "g_{,1}");
  CHECK(to_string(d12) == "g_{,1,2}");

  // Product rule mixing a symbol and a coordinate.
  auto x1 = ScalarExpr::coordinate(chart3(), 0);
  CHECK(equal(partial(g * x1, chart3(), 0), g + x1 * d1));
}

TEST_CASE("parser accepts declared symbols only") {
  std::set<std::string> syms{"g"};
  CHECK_NOTHROW(parse3("g*x1 + g(x1,x2,x3)", syms));
  CHECK(equal(parse3("g - g(x1,x2,x3)", syms), ScalarExpr::zero()));
  CHECK_THROWS_AS(parse3("h*x1", syms), parse_error);
  CHECK_THROWS_AS(parse3("g(x2,x1,x3)", syms), parse_error);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse3("x1 + ");
    FAIL("expected a parse error");
  } catch (const parse_error& e) {
    CHECK(e.pos == 5);
  }
  CHECK_THROWS_AS(parse3("x1 + %"), parse_error);
  CHECK_THROWS_AS(parse3("exp"), parse_error);
  CHECK_THROWS_AS(parse3("x1 x2"), parse_error);
}

TEST_CASE("printing round-trips through the parser") {
  for (const char* src :
       {"x1^2*x2 - 3*x3", "1/(x2 + 1)", "exp(x1 + x2)*x3 - 2/7",
        "(x1 + exp(2*x2))/(x3 - 5)", "-x1 + exp(-x1)"}) {
    auto e = parse3(src);
    auto back = parse3(to_string(e));
    CHECK(equal(e, back));
  }
}

TEST_CASE("exact zero decisions") {
  CHECK(is_zero(parse3("0")) == ZeroDecision::zero);
  CHECK(is_zero(parse3("x1*x2 - x2*x1")) == ZeroDecision::zero);
  CHECK(is_zero(parse3("x1 - x2")) == ZeroDecision::nonzero);
  std::set<std::string> syms{"g"};
  auto g = ScalarExpr::symbol("g");
  auto x1 = ScalarExpr::coordinate(chart3(), 0);
  // A symbol is algebraically independent of the coordinates.
  CHECK(is_zero(g - x1) == ZeroDecision::nonzero);
}

TEST_CASE("sampled zero test agrees with the exact one") {
  SampleOptions opt;
  opt.seed = 17;
  auto z = parse3("(x1 + x2)^3 - x1^3 - 3*x1^2*x2 - 3*x1*x2^2 - x2^3");
  CHECK(is_zero_sampled(z, opt) == ZeroDecision::probably_zero);
  CHECK(is_zero_sampled(parse3("x1*x3 - x2"), opt) == ZeroDecision::probably_nonzero);
  CHECK(is_zero_sampled(exp(parse3("x1")) - parse3("1"), opt) ==
        ZeroDecision::probably_nonzero);

  // Same seed, same verdict: the sampling stream is deterministic.
  auto e = parse3("exp(x1)*exp(x2) - exp(x1 + x2) + x3/1000000");
  CHECK(is_zero_sampled(e, opt) == is_zero_sampled(e, opt));
}

TEST_CASE("substitute_symbol replaces a symbol and its partials") {
  std::set<std::string> syms{"g"};
  auto e = parse3("g*x1", syms);
  auto d = partial(e, chart3(), 0);  // g + x1*g_{,1}
  auto val = parse3("x1^2");
  auto sub = substitute_symbol(d, chart3(), "g", val);
  CHECK(equal(sub, parse3("x1^2 + 2*x1^2")));
}
