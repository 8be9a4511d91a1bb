#pragma once

// The modular tensor field of a verified structure with respect to a volume:
// the divergence of the structure tensor, verified at construction against
// the contraction relation
//   (iota_alpha M) mu = L_{sharp(alpha)} mu + (-1)^n (iota_{dA alpha} Pi) mu
// on a weighted basis. Includes the volume-change law, the degree-1 cocycle
// check of the induced bracket, the subordinate-structure relation, and the
// Hamiltonian-invariance obstruction test.

#include "nambu/leibniz.hpp"

namespace nambu {

struct ModularTensor {
  ExteriorTensor tensor;    // grade n-1 multivector
  NambuStructure structure; // provenance
  VolumeSection volume;     // provenance
};

// Computes the divergence of the structure tensor and verifies the defining
// contraction relation on the weighted basis; a mismatch means an internal
// convention bug and throws internal_error.
ModularTensor modular_tensor(const NambuStructure& P, const VolumeSection& mu);

// Modular tensor for the rescaled volume e^g * mu, recomputed from scratch
// and checked against the change law
//   iota_alpha (M' - M) = rho(sharp(alpha))(g)
// on the weighted basis (internal_error on mismatch).
ModularTensor volume_change(const ModularTensor& M, const ScalarExpr& g);

// Divergence-free, star-image, and invariance properties of a computed
// modular tensor, each as a report item.
VerificationReport modular_property_checks(const ModularTensor& M);

// Degree-1 cocycle condition of the induced bracket for the map
// alpha -> iota_alpha M, over weighted basis pairs with independent weights.
VerificationReport cocycle_check(const ModularTensor& M);

// Compares the modular tensor of the subordinate structure iota_alpha Pi
// with the contraction iota_alpha of the parent's modular tensor, both
// computed independently.
VerificationReport subordinate_modular_check(const NambuStructure& P,
                                             const ExteriorTensor& alpha_bar,
                                             const VolumeSection& mu);

// Accepts the candidate potential g if iota_alpha M = rho(sharp(alpha))(g)
// over the basis, then verifies that e^{-g} mu is invariant under every
// Hamiltonian section (fresh uninterpreted symbols as Hamiltonians).
VerificationReport hamiltonian_invariance_check(const NambuStructure& P,
                                                const VolumeSection& mu,
                                                const ScalarExpr& g);

}  // namespace nambu
