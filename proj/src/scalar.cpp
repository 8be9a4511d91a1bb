#include "nambu/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <random>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace nambu {

namespace {

constexpr std::size_t kMulBudget = 2'000'000;  // term-pair budget per product

Poly poly_one() {
  Poly p;
  p[Monomial{}] = 1;
  return p;
}

bool poly_is_one(const Poly& p) {
  return p.size() == 1 && p.begin()->first.pow.empty() &&
         !p.begin()->first.earg && p.begin()->second == 1;
}

RatFunc rf_zero() { return RatFunc{Poly{}, poly_one()}; }
RatFunc rf_one() { return RatFunc{poly_one(), poly_one()}; }

RatFunc make_ratfunc(Poly num, Poly den);
RatFunc rf_add(const RatFunc& a, const RatFunc& b);
RatFunc rf_sub(const RatFunc& a, const RatFunc& b);
RatFunc rf_mul(const RatFunc& a, const RatFunc& b);

void poly_insert(Poly& p, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = p.find(m);
  if (it == p.end()) {
    p.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r = a;
  for (const auto& [m, c] : b) poly_insert(r, m, c);
  return r;
}

Poly poly_neg(const Poly& a) {
  Poly r = a;
  for (auto& [m, c] : r) c = -c;
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_neg(b)); }

RatFuncPtr earg_add(const RatFuncPtr& a, const RatFuncPtr& b) {
  if (!a) return b;
  if (!b) return a;
  RatFunc s = rf_add(*a, *b);
  if (s.num.empty()) return nullptr;
  return std::make_shared<const RatFunc>(std::move(s));
}

RatFuncPtr earg_sub(const RatFuncPtr& a, const RatFuncPtr& b) {
  if (!b) return a;
  RatFunc nb{poly_neg(b->num), b->den};
  RatFuncPtr negb = std::make_shared<const RatFunc>(std::move(nb));
  return earg_add(a, negb);
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (const auto& [g, e] : b.pow) {
    auto it = r.pow.find(g);
    if (it == r.pow.end()) {
      r.pow.emplace(g, e);
    } else {
      it->second += e;
      if (it->second == 0) r.pow.erase(it);
    }
  }
  r.earg = earg_add(a.earg, b.earg);
  return r;
}

Poly poly_mul_term(const Poly& p, const Monomial& m, const Rational& c) {
  Poly r;
  for (const auto& [pm, pc] : p) poly_insert(r, mono_mul(pm, m), pc * c);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.size() * b.size() > kMulBudget)
    throw expression_too_large("polynomial product exceeds the term budget");
  Poly r;
  for (const auto& [am, ac] : a)
    for (const auto& [bm, bc] : b) poly_insert(r, mono_mul(am, bm), ac * bc);
  return r;
}

// Divides monomial m by d, or fails when a generator power is too small.
// Exponential arguments always subtract.
std::optional<Monomial> mono_try_div(const Monomial& m, const Monomial& d) {
  Monomial r = m;
  for (const auto& [g, e] : d.pow) {
    auto it = r.pow.find(g);
    if (it == r.pow.end() || it->second < e) return std::nullopt;
    it->second -= e;
    if (it->second == 0) r.pow.erase(it);
  }
  r.earg = earg_sub(m.earg, d.earg);
  return r;
}

// Exact single-divisor division with respect to the term order. Any success
// is a true factorization; failure just skips the simplification.
std::optional<Poly> poly_try_div(const Poly& a, const Poly& b) {
  if (b.empty()) return std::nullopt;
  if (poly_is_one(b)) return a;
  Poly r = a;
  Poly q;
  std::size_t cap = 64 + 8 * (a.size() + 1) * (b.size() + 1);
  while (!r.empty()) {
    if (cap-- == 0) return std::nullopt;
    const auto& [rm, rc] = *r.rbegin();
    const auto& [bm, bc] = *b.rbegin();
    auto t = mono_try_div(rm, bm);
    if (!t) return std::nullopt;
    Rational tc = rc / bc;
    poly_insert(q, *t, tc);
    r = poly_sub(r, poly_mul_term(b, *t, tc));
  }
  return q;
}

// Strips generator powers common to every monomial of both polynomials.
void strip_common_powers(Poly& num, Poly& den) {
  std::map<Gen, int, GenLess> common = num.begin()->first.pow;
  auto meet = [&common](const Poly& p) {
    for (const auto& [m, c] : p) {
      (void)c;
      for (auto it = common.begin(); it != common.end();) {
        auto f = m.pow.find(it->first);
        if (f == m.pow.end()) {
          it = common.erase(it);
        } else {
          it->second = std::min(it->second, f->second);
          ++it;
        }
      }
      if (common.empty()) return;
    }
  };
  meet(num);
  meet(den);
  if (common.empty()) return;
  Monomial d;
  d.pow = common;
  auto strip = [&d](Poly& p) {
    Poly r;
    for (const auto& [m, c] : p) r.emplace(*mono_try_div(m, d), c);
    p = std::move(r);
  };
  strip(num);
  strip(den);
}

// Multiplies both polynomials by exp(-w); used to clear the exponential
// factor from the denominator's leading monomial.
void shift_eargs(Poly& p, const RatFuncPtr& w) {
  Poly r;
  for (const auto& [m, c] : p) {
    Monomial mm = m;
    mm.earg = earg_sub(m.earg, w);
    poly_insert(r, mm, c);
  }
  p = std::move(r);
}

RatFunc make_ratfunc(Poly num, Poly den) {
  if (den.empty()) throw domain_error("division by zero scalar expression");
  if (num.empty()) return rf_zero();
  for (int round = 0; round < 3; ++round) {
    strip_common_powers(num, den);
    if (den.rbegin()->first.earg) {
      RatFuncPtr w = den.rbegin()->first.earg;
      shift_eargs(num, w);
      shift_eargs(den, w);
    }
    Rational lead = den.rbegin()->second;
    if (lead != 1) {
      for (auto& [m, c] : num) c /= lead;
      for (auto& [m, c] : den) c /= lead;
    }
    if (poly_is_one(den)) break;
    if (auto q = poly_try_div(num, den)) {
      num = std::move(*q);
      den = poly_one();
      continue;
    }
    if (!poly_is_one(num)) {
      if (auto q = poly_try_div(den, num)) {
        den = std::move(*q);
        num = poly_one();
        continue;
      }
    }
    break;
  }
  return RatFunc{std::move(num), std::move(den)};
}

RatFunc rf_add(const RatFunc& a, const RatFunc& b) {
  return make_ratfunc(poly_add(poly_mul(a.num, b.den), poly_mul(b.num, a.den)),
                      poly_mul(a.den, b.den));
}

RatFunc rf_neg(const RatFunc& a) { return RatFunc{poly_neg(a.num), a.den}; }

RatFunc rf_sub(const RatFunc& a, const RatFunc& b) {
  return rf_add(a, rf_neg(b));
}

RatFunc rf_mul(const RatFunc& a, const RatFunc& b) {
  return make_ratfunc(poly_mul(a.num, b.num), poly_mul(a.den, b.den));
}

RatFunc rf_div(const RatFunc& a, const RatFunc& b) {
  if (b.num.empty()) throw domain_error("division by zero scalar expression");
  return make_ratfunc(poly_mul(a.num, b.den), poly_mul(a.den, b.num));
}

RatFunc rf_pow(const RatFunc& a, int k) {
  if (k < 0) return rf_pow(rf_div(rf_one(), a), -k);
  RatFunc r = rf_one();
  RatFunc base = a;
  for (int e = k; e > 0; e >>= 1) {
    if (e & 1) r = rf_mul(r, base);
    if (e > 1) base = rf_mul(base, base);
  }
  return r;
}

RatFunc rf_from_poly(Poly p) { return RatFunc{std::move(p), poly_one()}; }

RatFunc rf_partial(const RatFunc& f, const Chart& chart, int i);

// d/dx_i of a single generator: 0 or 1 for coordinates, a fresh derivative
// generator for function symbols.
RatFunc gen_partial(const Gen& g, int i) {
  if (g.coord >= 0) {
    if (g.coord == i) return rf_one();
    return rf_zero();
  }
  Gen dg = g;
  dg.partials.insert(
      std::upper_bound(dg.partials.begin(), dg.partials.end(), i), i);
  Poly p;
  Monomial m;
  m.pow.emplace(std::move(dg), 1);
  p.emplace(std::move(m), 1);
  return rf_from_poly(std::move(p));
}

RatFunc poly_partial(const Poly& p, const Chart& chart, int i) {
  RatFunc acc = rf_zero();
  for (const auto& [m, c] : p) {
    for (const auto& [g, e] : m.pow) {
      RatFunc dg = gen_partial(g, i);
      if (dg.num.empty()) continue;
      Monomial rest = m;
      auto it = rest.pow.find(g);
      if (--it->second == 0) rest.pow.erase(it);
      Poly term;
      term.emplace(std::move(rest), c * e);
      acc = rf_add(acc, rf_mul(rf_from_poly(std::move(term)), dg));
    }
    if (m.earg) {
      RatFunc dw = rf_partial(*m.earg, chart, i);
      if (!dw.num.empty()) {
        Poly term;
        term.emplace(m, c);
        acc = rf_add(acc, rf_mul(rf_from_poly(std::move(term)), dw));
      }
    }
  }
  return acc;
}

RatFunc rf_partial(const RatFunc& f, const Chart& chart, int i) {
  RatFunc dn = poly_partial(f.num, chart, i);
  RatFunc dd = poly_partial(f.den, chart, i);
  RatFunc den = rf_from_poly(f.den);
  // (num' * den - num * den') / den^2
  RatFunc top = rf_sub(rf_mul(dn, den), rf_mul(rf_from_poly(f.num), dd));
  return rf_div(top, rf_mul(den, den));
}

}  // namespace

int Chart::index_of(const std::string& name) const {
  for (int i = 0; i < dim(); ++i)
    if (coords[i] == name) return i;
  return -1;
}

ChartPtr make_chart(std::vector<std::string> coords) {
  auto c = std::make_shared<Chart>();
  c->coords = std::move(coords);
  return c;
}

int cmp(const Gen& a, const Gen& b) {
  bool ac = a.coord >= 0, bc = b.coord >= 0;
  if (ac != bc) return ac ? -1 : 1;  // coordinates sort before symbols
  if (ac) {
    if (a.coord != b.coord) return a.coord < b.coord ? -1 : 1;
    return a.name.compare(b.name) < 0 ? -1 : (a.name == b.name ? 0 : 1);
  }
  if (int c = a.name.compare(b.name); c != 0) return c < 0 ? -1 : 1;
  if (a.partials != b.partials)
    return a.partials < b.partials ? -1 : 1;
  return 0;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [g, e] : pow) d += e;
  return d;
}

// Graded order: total degree first, then by exponent of the smallest
// differing generator, then by the exponential argument (absent sorts last,
// which keeps the denominator's leading term exponential-free after
// normalization).
int cmp(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  auto ia = a.pow.begin(), ib = b.pow.begin();
  while (ia != a.pow.end() || ib != b.pow.end()) {
    if (ia == a.pow.end()) return -1;
    if (ib == b.pow.end()) return 1;
    int cg = cmp(ia->first, ib->first);
    if (cg < 0) return 1;   // a has the smaller generator with positive power
    if (cg > 0) return -1;
    if (ia->second != ib->second) return ia->second > ib->second ? 1 : -1;
    ++ia;
    ++ib;
  }
  if (!a.earg && !b.earg) return 0;
  if (!a.earg) return 1;
  if (!b.earg) return -1;
  return cmp(*a.earg, *b.earg);
}

int cmp(const Poly& a, const Poly& b) {
  auto ia = a.rbegin(), ib = b.rbegin();
  while (ia != a.rend() && ib != b.rend()) {
    if (int c = cmp(ia->first, ib->first); c != 0) return c;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    ++ia;
    ++ib;
  }
  if (ia == a.rend() && ib == b.rend()) return 0;
  return ia == a.rend() ? -1 : 1;
}

int cmp(const RatFunc& a, const RatFunc& b) {
  if (int c = cmp(a.num, b.num); c != 0) return c;
  return cmp(a.den, b.den);
}

ScalarExpr::ScalarExpr() : rep_(std::make_shared<const RatFunc>(rf_zero())) {}

ScalarExpr ScalarExpr::from_rep(RatFuncPtr rf) { return ScalarExpr(std::move(rf)); }

ScalarExpr ScalarExpr::rational(const Rational& q) {
  Poly p;
  poly_insert(p, Monomial{}, q);
  return from_rep(std::make_shared<const RatFunc>(rf_from_poly(std::move(p))));
}

ScalarExpr ScalarExpr::integer(long long n) { return rational(Rational(n)); }

ScalarExpr ScalarExpr::coordinate(const Chart& chart, int i) {
  if (i < 0 || i >= chart.dim())
    throw domain_error("coordinate index out of range");
  Gen g;
  g.coord = i;
  g.name = chart.coords[i];
  Poly p;
  Monomial m;
  m.pow.emplace(std::move(g), 1);
  p.emplace(std::move(m), 1);
  return from_rep(std::make_shared<const RatFunc>(rf_from_poly(std::move(p))));
}

ScalarExpr ScalarExpr::symbol(const std::string& name) {
  Gen g;
  g.name = name;
  Poly p;
  Monomial m;
  m.pow.emplace(std::move(g), 1);
  p.emplace(std::move(m), 1);
  return from_rep(std::make_shared<const RatFunc>(rf_from_poly(std::move(p))));
}

bool ScalarExpr::is_zero_expr() const { return rep_->num.empty(); }

bool ScalarExpr::is_one_expr() const {
  return poly_is_one(rep_->num) && poly_is_one(rep_->den);
}

bool ScalarExpr::as_rational(Rational* out) const {
  if (!poly_is_one(rep_->den)) return false;
  if (rep_->num.empty()) {
    if (out) *out = 0;
    return true;
  }
  if (rep_->num.size() != 1) return false;
  const auto& [m, c] = *rep_->num.begin();
  if (!m.pow.empty() || m.earg) return false;
  if (out) *out = c;
  return true;
}

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr::from_rep(
      std::make_shared<const RatFunc>(rf_add(*a.rep_, *b.rep_)));
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr::from_rep(
      std::make_shared<const RatFunc>(rf_sub(*a.rep_, *b.rep_)));
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr::from_rep(
      std::make_shared<const RatFunc>(rf_mul(*a.rep_, *b.rep_)));
}

ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
  return ScalarExpr::from_rep(
      std::make_shared<const RatFunc>(rf_div(*a.rep_, *b.rep_)));
}

ScalarExpr ScalarExpr::operator-() const {
  return from_rep(std::make_shared<const RatFunc>(rf_neg(*rep_)));
}

ScalarExpr pow(const ScalarExpr& e, int k) {
  return ScalarExpr::from_rep(
      std::make_shared<const RatFunc>(rf_pow(e.rep(), k)));
}

ScalarExpr exp(const ScalarExpr& e) {
  if (e.is_zero_expr()) return ScalarExpr::one();
  Monomial m;
  m.earg = e.rep_ptr();
  Poly p;
  p.emplace(std::move(m), 1);
  return ScalarExpr::from_rep(
      std::make_shared<const RatFunc>(rf_from_poly(std::move(p))));
}

ScalarExpr partial(const ScalarExpr& e, const Chart& chart, int i) {
  if (i < 0 || i >= chart.dim())
    throw domain_error("partial derivative index out of range");
  return ScalarExpr::from_rep(
      std::make_shared<const RatFunc>(rf_partial(e.rep(), chart, i)));
}

ZeroDecision is_zero(const ScalarExpr& e) {
  return e.is_zero_expr() ? ZeroDecision::zero : ZeroDecision::nonzero;
}

bool equal(const ScalarExpr& a, const ScalarExpr& b) {
  return (a - b).is_zero_expr();
}

int cmp(const ScalarExpr& a, const ScalarExpr& b) { return cmp(a.rep(), b.rep()); }

namespace {

using Float = boost::multiprecision::cpp_bin_float_50;

void collect_gens(const RatFunc& f, std::map<Gen, Float, GenLess>& out) {
  auto scan = [&out](const Poly& p) {
    for (const auto& [m, c] : p) {
      (void)c;
      for (const auto& [g, e] : m.pow) {
        (void)e;
        out.emplace(g, Float(0));
      }
      if (m.earg) collect_gens(*m.earg, out);
    }
  };
  scan(f.num);
  scan(f.den);
}

struct bad_sample {};  // vanishing denominator or overflow; retry the point

Float eval_rf(const RatFunc& f, const std::map<Gen, Float, GenLess>& vals,
              const Float& tol);

// Evaluates a polynomial, returning (sum, sum of |term|). The second value
// scales the zero tolerance so exponential magnitudes do not distort it.
std::pair<Float, Float> eval_poly(const Poly& p,
                                  const std::map<Gen, Float, GenLess>& vals,
                                  const Float& tol) {
  Float sum = 0, scale = 0;
  for (const auto& [m, c] : p) {
    Float t = static_cast<Float>(c);
    for (const auto& [g, e] : m.pow) {
      Float v = vals.at(g);
      for (int k = 0; k < e; ++k) t *= v;
    }
    if (m.earg) t *= boost::multiprecision::exp(eval_rf(*m.earg, vals, tol));
    if (!boost::multiprecision::isfinite(t)) throw bad_sample{};
    sum += t;
    scale += boost::multiprecision::abs(t);
  }
  return {sum, scale};
}

Float eval_rf(const RatFunc& f, const std::map<Gen, Float, GenLess>& vals,
              const Float& tol) {
  auto [ds, dscale] = eval_poly(f.den, vals, tol);
  Float floor = Float(1e-30) * (dscale > 1 ? dscale : Float(1));
  if (boost::multiprecision::abs(ds) <= floor) throw bad_sample{};
  auto [ns, nscale] = eval_poly(f.num, vals, tol);
  (void)nscale;
  Float r = ns / ds;
  if (!boost::multiprecision::isfinite(r)) throw bad_sample{};
  return r;
}

}  // namespace

ZeroDecision is_zero_sampled(const ScalarExpr& e, const SampleOptions& opt) {
  if (e.is_zero_expr()) return ZeroDecision::probably_zero;
  std::map<Gen, Float, GenLess> vals;
  collect_gens(e.rep(), vals);
  Float tol = Float(opt.tolerance);
  for (int point = 0; point < opt.samples; ++point) {
    bool ok = false;
    for (int retry = 0; retry <= opt.max_retries && !ok; ++retry) {
      std::mt19937_64 rng(opt.seed * 0x9E3779B97F4A7C15ull +
                          1000003ull * static_cast<std::uint64_t>(point) +
                          static_cast<std::uint64_t>(retry) + 1);
      std::uniform_int_distribution<int> num(-5, 5);
      std::uniform_int_distribution<int> den(1, 4);
      for (auto& [g, v] : vals) {
        (void)g;
        v = Float(num(rng)) / Float(den(rng));
      }
      try {
        auto [ds, dscale] = eval_poly(e.rep().den, vals, tol);
        Float dfloor = Float(1e-30) * (dscale > 1 ? dscale : Float(1));
        if (boost::multiprecision::abs(ds) <= dfloor) throw bad_sample{};
        auto [ns, nscale] = eval_poly(e.rep().num, vals, tol);
        Float bound = tol * (nscale > 1 ? nscale : Float(1));
        if (boost::multiprecision::abs(ns) > bound)
          return ZeroDecision::probably_nonzero;
        ok = true;
      } catch (const bad_sample&) {
        // resample
      }
    }
    if (!ok) return ZeroDecision::indeterminate;
  }
  return ZeroDecision::probably_zero;
}

namespace {

std::string rational_str(const Rational& q) { return q.str(); }

std::string rf_str(const RatFunc& f);

std::string gen_str(const Gen& g) {
  if (g.coord >= 0 || g.partials.empty()) return g.name;
  std::string s = g.name + "_{,";
  for (std::size_t i = 0; i < g.partials.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g.partials[i] + 1);
  }
  return s + "}";
}

std::string mono_str(const Monomial& m) {
  std::string s;
  for (const auto& [g, e] : m.pow) {
    if (!s.empty()) s += "*";
    s += gen_str(g);
    if (e != 1) s += "^" + std::to_string(e);
  }
  if (m.earg) {
    if (!s.empty()) s += "*";
    s += "exp(" + rf_str(*m.earg) + ")";
  }
  return s;
}

std::string poly_str(const Poly& p) {
  if (p.empty()) return "0";
  std::string s;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const Rational c = it->second;
    const bool neg = c < 0;
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    std::string ms = mono_str(it->first);
    Rational a = neg ? Rational(-c) : c;
    if (ms.empty()) {
      s += rational_str(a);
    } else if (a == 1) {
      s += ms;
    } else {
      s += rational_str(a) + "*" + ms;
    }
  }
  return s;
}

std::string rf_str(const RatFunc& f) {
  if (poly_is_one(f.den)) return poly_str(f.num);
  return "(" + poly_str(f.num) + ")/(" + poly_str(f.den) + ")";
}

}  // namespace

std::string to_string(const ScalarExpr& e) { return rf_str(e.rep()); }

namespace {

ScalarExpr subst_rf(const RatFunc& f, const Chart& chart,
                    const std::string& name, const ScalarExpr& value);

ScalarExpr subst_poly(const Poly& p, const Chart& chart,
                      const std::string& name, const ScalarExpr& value) {
  ScalarExpr acc = ScalarExpr::zero();
  for (const auto& [m, c] : p) {
    ScalarExpr term = ScalarExpr::rational(c);
    for (const auto& [g, e] : m.pow) {
      ScalarExpr base;
      if (g.coord < 0 && g.name == name) {
        base = value;
        for (int idx : g.partials) base = partial(base, chart, idx);
      } else {
        Poly q;
        Monomial gm;
        gm.pow.emplace(g, 1);
        q.emplace(std::move(gm), 1);
        base = ScalarExpr::from_rep(
            std::make_shared<const RatFunc>(rf_from_poly(std::move(q))));
      }
      term = term * pow(base, e);
    }
    if (m.earg) term = term * exp(subst_rf(*m.earg, chart, name, value));
    acc = acc + term;
  }
  return acc;
}

ScalarExpr subst_rf(const RatFunc& f, const Chart& chart,
                    const std::string& name, const ScalarExpr& value) {
  ScalarExpr n = subst_poly(f.num, chart, name, value);
  ScalarExpr d = subst_poly(f.den, chart, name, value);
  if (d.is_zero_expr())
    throw domain_error("substitution produced a zero denominator");
  return n / d;
}

}  // namespace

ScalarExpr substitute_symbol(const ScalarExpr& e, const Chart& chart,
                             const std::string& name, const ScalarExpr& value) {
  return subst_rf(e.rep(), chart, name, value);
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, const Chart& chart,
         const std::set<std::string>& symbols)
      : s_(text), chart_(chart), symbols_(symbols) {}

  ScalarExpr run() {
    ScalarExpr e = expr();
    skip_ws();
    if (pos_ != s_.size()) throw parse_error("trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) throw parse_error(std::string("expected ") + what, pos_);
  }

  ScalarExpr expr() {
    ScalarExpr e = term();
    for (;;) {
      if (accept('+')) {
        e = e + term();
      } else if (accept('-')) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  ScalarExpr term() {
    ScalarExpr e = factor();
    for (;;) {
      if (accept('*')) {
        e = e * factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        ScalarExpr d = factor();
        if (d.is_zero_expr()) throw parse_error("division by zero", at);
        e = e / d;
      } else {
        return e;
      }
    }
  }

  ScalarExpr factor() {
    ScalarExpr b = base();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      bool neg = false;
      if (pos_ < s_.size() && s_[pos_] == '-') {
        neg = true;
        ++pos_;
      }
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw parse_error("malformed exponent", at);
      long long k = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        k = k * 10 + (s_[pos_] - '0');
        if (k > 1'000'000) throw parse_error("exponent too large", at);
        ++pos_;
      }
      int e = static_cast<int>(neg ? -k : k);
      if (e < 0 && b.is_zero_expr())
        throw parse_error("division by zero", at);
      b = pow(b, e);
    }
    return b;
  }

  ScalarExpr base() {
    skip_ws();
    if (pos_ >= s_.size()) throw parse_error("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      return -base();
    }
    if (c == '(') {
      ++pos_;
      ScalarExpr e = expr();
      expect(')', "')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    throw parse_error("unexpected character", pos_);
  }

  ScalarExpr number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    boost::multiprecision::cpp_int n(s_.substr(start, pos_ - start));
    return ScalarExpr::rational(Rational(n));
  }

  ScalarExpr ident() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "exp") {
      expect('(', "'(' after exp");
      ScalarExpr arg = expr();
      expect(')', "')'");
      return exp(arg);
    }
    int ci = chart_.index_of(name);
    if (ci >= 0) {
      if (peek('('))
        throw parse_error("coordinate '" + name + "' is not callable", start);
      return ScalarExpr::coordinate(chart_, ci);
    }
    if (symbols_.count(name)) {
      if (accept('(')) {
        // Function symbols depend on all chart coordinates; the argument
        // list, when written out, must be exactly that.
        for (int i = 0; i < chart_.dim(); ++i) {
          if (i) expect(',', "','");
          skip_ws();
          std::size_t as = pos_;
          while (pos_ < s_.size() &&
                 (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                  s_[pos_] == '_'))
            ++pos_;
          if (s_.substr(as, pos_ - as) != chart_.coords[i])
            throw parse_error("symbol '" + name +
                                  "' must be applied to the chart coordinates",
                              as);
        }
        expect(')', "')'");
      }
      return ScalarExpr::symbol(name);
    }
    throw parse_error("unknown identifier '" + name + "'", start);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  const Chart& chart_;
  const std::set<std::string>& symbols_;
};

}  // namespace

ScalarExpr parse_expr(const std::string& text, const Chart& chart,
                      const std::set<std::string>& symbols) {
  return Parser(text, chart, symbols).run();
}

}  // namespace nambu
