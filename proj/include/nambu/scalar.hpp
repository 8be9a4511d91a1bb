#pragma once

// Exact scalar expressions on a coordinate chart: multivariate rational
// functions with rational coefficients whose generators are the chart
// coordinates, uninterpreted function symbols together with their formal
// partial derivatives, and exponentials exp(u) treated as transcendental
// generators keyed by their normalized argument (so exp(u)*exp(v) folds to
// exp(u+v)). Every operation returns the expanded canonical form, which makes
// the zero test exact on this class.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nambu/errors.hpp"

namespace nambu {

using Rational = boost::multiprecision::cpp_rational;

struct Chart {
  std::vector<std::string> coords;

  int dim() const { return static_cast<int>(coords.size()); }
  // Index of a coordinate name, -1 if absent.
  int index_of(const std::string& name) const;
};
using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::vector<std::string> coords);

// A polynomial generator: either a chart coordinate or a formal partial
// derivative of an uninterpreted function symbol. Mixed partials commute, so
// the partial index list is kept sorted.
struct Gen {
  int coord = -1;             // coordinate index, or -1 for a function symbol
  std::string name;           // coordinate or symbol name
  std::vector<int> partials;  // sorted coordinate indices; symbols only
};
int cmp(const Gen& a, const Gen& b);
struct GenLess {
  bool operator()(const Gen& a, const Gen& b) const { return cmp(a, b) < 0; }
};

struct RatFunc;
using RatFuncPtr = std::shared_ptr<const RatFunc>;
int cmp(const RatFunc& a, const RatFunc& b);

// Product of generator powers with at most one exponential factor. The
// exponential argument is a normalized nonzero rational function; products
// merge arguments additively.
struct Monomial {
  std::map<Gen, int, GenLess> pow;
  RatFuncPtr earg;  // null when there is no exponential factor

  int degree() const;
};
int cmp(const Monomial& a, const Monomial& b);
struct MonoLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return cmp(a, b) < 0;
  }
};

using Poly = std::map<Monomial, Rational, MonoLess>;
int cmp(const Poly& a, const Poly& b);

// Normalized fraction of expanded polynomials. Invariants: den is nonzero,
// its leading coefficient is 1 and its leading monomial carries no
// exponential factor; num and den share no common monomial factor.
struct RatFunc {
  Poly num;
  Poly den;
};

enum class ZeroDecision { zero, nonzero, probably_zero, probably_nonzero, indeterminate };

// Options for the numeric sampling fallback of the zero test.
struct SampleOptions {
  std::uint64_t seed = 0;
  int samples = 8;
  double tolerance = 1e-9;
  int max_retries = 4;
};

class ScalarExpr {
 public:
  ScalarExpr();  // zero

  static ScalarExpr rational(const Rational& q);
  static ScalarExpr integer(long long n);
  static ScalarExpr coordinate(const Chart& chart, int i);
  static ScalarExpr symbol(const std::string& name);
  static ScalarExpr zero() { return ScalarExpr(); }
  static ScalarExpr one() { return integer(1); }

  const RatFunc& rep() const { return *rep_; }
  RatFuncPtr rep_ptr() const { return rep_; }
  static ScalarExpr from_rep(RatFuncPtr rf);

  bool is_zero_expr() const;
  bool is_one_expr() const;
  // The value as a rational constant, if it is one.
  bool as_rational(Rational* out) const;

  friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);
  ScalarExpr operator-() const;

 private:
  explicit ScalarExpr(RatFuncPtr rep) : rep_(std::move(rep)) {}
  RatFuncPtr rep_;
};

ScalarExpr pow(const ScalarExpr& e, int k);
ScalarExpr exp(const ScalarExpr& e);

// Formal partial derivative along chart coordinate i.
ScalarExpr partial(const ScalarExpr& e, const Chart& chart, int i);

// Exact zero test; complete on this expression class.
ZeroDecision is_zero(const ScalarExpr& e);
// Numeric route: evaluates at seeded random rational points in high
// precision. Returns probably_zero / probably_nonzero, or indeterminate if
// every retry hit a vanishing denominator.
ZeroDecision is_zero_sampled(const ScalarExpr& e, const SampleOptions& opt);

bool equal(const ScalarExpr& a, const ScalarExpr& b);
int cmp(const ScalarExpr& a, const ScalarExpr& b);

std::string to_string(const ScalarExpr& e);

// Replaces every generator derived from function symbol `name` (the symbol
// itself and its formal partials) by the matching partial derivative of
// `value`. Used to turn a generic-weight witness into a concrete one.
ScalarExpr substitute_symbol(const ScalarExpr& e, const Chart& chart,
                             const std::string& name, const ScalarExpr& value);

// Recursive descent parser for the expression grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := integer | ident | ident '(' args ')' | '(' expr ')' | '-' base
// `exp` is reserved; idents must be chart coordinates or declared symbols.
ScalarExpr parse_expr(const std::string& text, const Chart& chart,
                      const std::set<std::string>& symbols);

}  // namespace nambu
