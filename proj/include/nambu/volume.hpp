#pragma once

// Volume sections (nowhere-vanishing top coforms), the star isomorphism they
// induce between multivectors and forms, and the boundary (divergence)
// operator conjugate to the differential under star.

#include "nambu/calculus.hpp"

namespace nambu {

struct VolumeSection {
  AlgebroidPtr algebroid;
  ScalarExpr coeff;           // coefficient on the full-frame coform
  bool nonvanishing = false;  // declared, or structurally evident

  std::uint32_t top_mask() const;
  ExteriorTensor form() const;
};

// Builds a volume section; rejects an identically-zero coefficient.
// Coefficients that are visibly nonvanishing (nonzero constants and constant
// multiples of exponentials) need no declaration; anything else keeps the
// caller's flag.
VolumeSection make_volume(const AlgebroidPtr& A, const ScalarExpr& u,
                          bool declared_nonvanishing);

// Multivectors of grade k to forms of grade m-k, by contraction into the
// volume; grade 0 multiplies the volume.
ExteriorTensor star(const VolumeSection& mu, const ExteriorTensor& P);
// Inverse of star on every grade.
ExteriorTensor star_inv(const VolumeSection& mu, const ExteriorTensor& alpha);

// Grade k to k-1: star_inv after the differential after star.
ExteriorTensor boundary(const VolumeSection& mu, const ExteriorTensor& P);
// Grade-1 case as a scalar; satisfies L_X(volume) = divergence(X) * volume.
ScalarExpr divergence(const VolumeSection& mu, const ExteriorTensor& X);

// Residual of
//   iota_alpha boundary(P) = divergence(iota_alpha P) + (-1)^k iota_{dA alpha} P
// for P of grade k and alpha of grade k-1.
VerificationReport divergence_identity_check(const VolumeSection& mu,
                                             const ExteriorTensor& P,
                                             const ExteriorTensor& alpha);

}  // namespace nambu
