#pragma once

// Multisections subject to the fundamental-identity-style condition
//   L_{sharp(alpha)} Pi = (-1)^n (iota_{dA alpha} Pi) Pi
// for every form alpha of grade n-1, together with the checkers (ours and the
// bracket-side variant), pointwise decomposability, subordinate structures,
// Hamiltonian sections, the induced base bracket, and maximal structures
// built from volumes.
//
// Checking strategy: both sides of the condition are R-linear in alpha and
// first order in a scalar coefficient, so sweeping alpha = w * omega with w a
// fresh uninterpreted symbol and omega over the basis (n-1)-coforms is
// exhaustive over all smooth coefficients. Failures are concretized by
// substituting small polynomials for w until the residual survives.

#include <optional>

#include "nambu/volume.hpp"

namespace nambu {

enum class NambuStatus { unchecked, verified, refuted };

struct NambuWitness {
  ExteriorTensor alpha;     // the failing argument form
  ExteriorTensor residual;  // value of the defining condition's residual
};

class NambuStructure {
 public:
  // Takes an n-multivector, 3 <= n <= rank; n = 2 only with the experiment
  // flag (for bivectors the condition holds exactly on the pointwise
  // decomposable ones, so order 2 is gated).
  explicit NambuStructure(ExteriorTensor pi, bool allow_order_2 = false);

  const ExteriorTensor& tensor() const { return pi_; }
  const AlgebroidPtr& algebroid() const { return pi_.algebroid(); }
  int order() const { return pi_.grade(); }
  NambuStatus status() const { return status_; }
  const std::optional<NambuWitness>& refutation() const { return witness_; }

  void mark_verified() { status_ = NambuStatus::verified; witness_.reset(); }
  void mark_refuted(NambuWitness w) {
    status_ = NambuStatus::refuted;
    witness_ = std::move(w);
  }

 private:
  ExteriorTensor pi_;
  NambuStatus status_ = NambuStatus::unchecked;
  std::optional<NambuWitness> witness_;
};

// iota_alpha Pi for alpha of grade n-1.
ExteriorTensor sharp(const NambuStructure& P, const ExteriorTensor& alpha);

// Defining-condition sweep; updates the structure's status and stores the
// first concretized witness on failure.
VerificationReport check_nambu(NambuStructure& P);

// The bracket-side condition
//   [sharp(alpha), Pi]^sharp(beta) = -sharp(iota_{sharp(beta)} dA alpha),
// swept with alpha weighted and beta over the plain basis (both sides are
// function-linear in beta). Status is not touched; this variant is for
// comparison runs.
VerificationReport check_wade(const NambuStructure& P);

// (iota_gamma Pi) ^ Pi = 0 over basis gamma; passes exactly when the tensor
// is decomposable at every point where it does not vanish.
VerificationReport check_pointwise_decomposability(const NambuStructure& P);

// iota_{a_1 ^ ... ^ a_k} Pi for closed grade-1 forms a_i; the result is again
// a structure of order n-k >= 3 and inherits verified status.
NambuStructure subordinate(const NambuStructure& P,
                           const std::vector<ExteriorTensor>& alphas);

// sharp(dA f_1 ^ ... ^ dA f_{n-1}).
ExteriorTensor hamiltonian_section(const NambuStructure& P,
                                   const std::vector<ScalarExpr>& fs);

// Pi(dA f_1, ..., dA f_n).
ScalarExpr induced_base_bracket(const NambuStructure& P,
                                const std::vector<ScalarExpr>& fs);

// Residual of the fundamental identity of the induced bracket,
//   {f_1..f_{n-1}, {g_1..g_n}} = sum_i {g_1, .., {f_1..f_{n-1}, g_i}, .., g_n},
// at the given test functions (uninterpreted symbols make the check
// universal in the arguments).
VerificationReport fundamental_identity_check(const NambuStructure& P,
                                              const std::vector<ScalarExpr>& fs,
                                              const std::vector<ScalarExpr>& gs);

// The induced tensor on the tangent algebroid of the base chart.
ExteriorTensor pushforward_base_tensor(const NambuStructure& P);

// The maximal structure defined by pairing to 1 against the volume; rank of
// the algebroid must be at least 3.
NambuStructure maximal_from_volume(const VolumeSection& mu);

}  // namespace nambu
