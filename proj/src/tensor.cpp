#include "nambu/tensor.hpp"

#include <bit>

namespace nambu {

namespace {

int clamp_grade(int g, int m) { return g < 0 ? 0 : (g > m ? m : g); }

void require_compatible(const ExteriorTensor& a, const ExteriorTensor& b) {
  if (!compatible(a.algebroid(), b.algebroid()))
    throw domain_error("tensors live over different algebroids");
}

// Sign of inserting the ascending factors of `ins` into the leading slots of
// the basis monomial `mask`, one at a time; 0 when some factor is absent.
int insertion_sign(std::uint32_t ins, std::uint32_t mask) {
  int sign = 1;
  std::uint32_t cur = mask;
  while (ins) {
    std::uint32_t bit = ins & (~ins + 1);  // lowest set bit
    if (!(cur & bit)) return 0;
    if (std::popcount(cur & (bit - 1)) & 1) sign = -sign;
    cur &= ~bit;
    ins &= ~bit;
  }
  return sign;
}

// Sign of merging two disjoint ascending index sets by concatenation.
int shuffle_sign(std::uint32_t a, std::uint32_t b) {
  int inv = 0;
  std::uint32_t bb = b;
  while (bb) {
    std::uint32_t bit = bb & (~bb + 1);
    inv += std::popcount(a & ~(bit | (bit - 1)));
    bb &= ~bit;
  }
  return (inv & 1) ? -1 : 1;
}

}  // namespace

ExteriorTensor::ExteriorTensor(AlgebroidPtr A, Variance v, int grade)
    : A_(std::move(A)), v_(v), grade_(clamp_grade(grade, A_ ? A_->rank : 0)) {
  if (!A_) throw domain_error("tensor needs an algebroid");
}

ExteriorTensor ExteriorTensor::scalar(AlgebroidPtr A, Variance v,
                                      const ScalarExpr& f) {
  ExteriorTensor t(std::move(A), v, 0);
  t.set_coeff(0, f);
  return t;
}

ExteriorTensor ExteriorTensor::basis(AlgebroidPtr A, Variance v,
                                     std::uint32_t mask) {
  ExteriorTensor t(std::move(A), v, std::popcount(mask));
  t.set_coeff(mask, ScalarExpr::one());
  return t;
}

ScalarExpr ExteriorTensor::coeff(std::uint32_t mask) const {
  auto it = comp_.find(mask);
  return it == comp_.end() ? ScalarExpr::zero() : it->second;
}

void ExteriorTensor::set_coeff(std::uint32_t mask, const ScalarExpr& f) {
  if (std::popcount(mask) != grade_)
    throw domain_error("component index set does not match the tensor grade");
  if (grade_ > 0 && static_cast<int>(32 - std::countl_zero(mask)) > A_->rank)
    throw domain_error("component index out of range");
  if (f.is_zero_expr())
    comp_.erase(mask);
  else
    comp_[mask] = f;
}

ScalarExpr ExteriorTensor::scalar_value() const {
  if (grade_ != 0) throw domain_error("not a grade-0 tensor");
  return coeff(0);
}

ExteriorTensor operator+(const ExteriorTensor& a, const ExteriorTensor& b) {
  require_compatible(a, b);
  if (a.v_ != b.v_ || a.grade_ != b.grade_) {
    // Adding zero of a clamped grade is the one tolerated mismatch.
    if (a.is_zero_tensor()) return b;
    if (b.is_zero_tensor()) return a;
    throw domain_error("tensor sum needs matching variance and grade");
  }
  ExteriorTensor r = a;
  for (const auto& [m, c] : b.comp_) r.set_coeff(m, r.coeff(m) + c);
  return r;
}

ExteriorTensor operator-(const ExteriorTensor& a, const ExteriorTensor& b) {
  return a + (-b);
}

ExteriorTensor ExteriorTensor::operator-() const {
  ExteriorTensor r(A_, v_, grade_);
  for (const auto& [m, c] : comp_) r.comp_[m] = -c;
  return r;
}

ExteriorTensor scalar_mul(const ScalarExpr& f, const ExteriorTensor& t) {
  ExteriorTensor r(t.algebroid(), t.variance(), t.grade());
  if (f.is_zero_expr()) return r;
  for (const auto& [m, c] : t.comps()) r.set_coeff(m, f * c);
  return r;
}

ExteriorTensor wedge(const ExteriorTensor& a, const ExteriorTensor& b) {
  require_compatible(a, b);
  if (a.variance() != b.variance() && a.grade() != 0 && b.grade() != 0)
    throw domain_error("wedge needs matching variance");
  Variance v = a.grade() == 0 && b.grade() != 0 ? b.variance() : a.variance();
  int m = a.algebroid()->rank;
  int g = a.grade() + b.grade();
  ExteriorTensor r(a.algebroid(), v, clamp_grade(g, m));
  if (g > m) return r;
  for (const auto& [ma, ca] : a.comps())
    for (const auto& [mb, cb] : b.comps()) {
      if (ma & mb) continue;
      int s = shuffle_sign(ma, mb);
      std::uint32_t mm = ma | mb;
      ScalarExpr add = s > 0 ? ca * cb : -(ca * cb);
      r.set_coeff(mm, r.coeff(mm) + add);
    }
  return r;
}

namespace {

// Shared index algebra of both contractions: insert the factors of `ins`
// into the leading slots of `tgt`.
ExteriorTensor contract_impl(const ExteriorTensor& ins, const ExteriorTensor& tgt) {
  int g = tgt.grade() - ins.grade();
  ExteriorTensor r(tgt.algebroid(), tgt.variance(), clamp_grade(g, tgt.algebroid()->rank));
  if (g < 0) return r;
  for (const auto& [mi, ci] : ins.comps())
    for (const auto& [mt, ct] : tgt.comps()) {
      int s = insertion_sign(mi, mt);
      if (s == 0) continue;
      std::uint32_t mm = mt & ~mi;
      ScalarExpr add = s > 0 ? ci * ct : -(ci * ct);
      r.set_coeff(mm, r.coeff(mm) + add);
    }
  return r;
}

}  // namespace

ExteriorTensor contract_by_section(const ExteriorTensor& X, const ExteriorTensor& alpha) {
  require_compatible(X, alpha);
  if (X.variance() != Variance::multivector || alpha.variance() != Variance::form)
    throw domain_error("contract_by_section takes a multivector and a form");
  return contract_impl(X, alpha);
}

ExteriorTensor contract_by_form(const ExteriorTensor& eta, const ExteriorTensor& P) {
  require_compatible(eta, P);
  if (eta.variance() != Variance::form || P.variance() != Variance::multivector)
    throw domain_error("contract_by_form takes a form and a multivector");
  return contract_impl(eta, P);
}

ScalarExpr pairing(const ExteriorTensor& P, const ExteriorTensor& alpha) {
  require_compatible(P, alpha);
  if (P.variance() != Variance::multivector || alpha.variance() != Variance::form)
    throw domain_error("pairing takes a multivector and a form");
  if (P.grade() != alpha.grade())
    throw domain_error("pairing needs equal grades");
  ScalarExpr r = ScalarExpr::zero();
  for (const auto& [m, c] : P.comps()) r = r + c * alpha.coeff(m);
  return r;
}

bool equal(const ExteriorTensor& a, const ExteriorTensor& b) {
  return (a - b).is_zero_tensor();
}

std::string basis_name(const AlgebroidPresentation& A, Variance v, std::uint32_t mask) {
  if (mask == 0) return "1";
  std::string s;
  for (int i = 0; i < A.rank; ++i) {
    if (!(mask & (1u << i))) continue;
    if (!s.empty()) s += "^";
    s += A.frame[static_cast<std::size_t>(i)];
    if (v == Variance::form) s += "*";
  }
  return s;
}

std::string to_string(const ExteriorTensor& t) {
  if (t.is_zero_tensor()) return "0";
  std::string s;
  for (const auto& [m, c] : t.comps()) {
    if (!s.empty()) s += " + ";
    if (m == 0) {
      s += to_string(c);
    } else if (c.is_one_expr()) {
      s += basis_name(*t.algebroid(), t.variance(), m);
    } else {
      s += "(" + to_string(c) + ")*" + basis_name(*t.algebroid(), t.variance(), m);
    }
  }
  return s;
}

}  // namespace nambu
