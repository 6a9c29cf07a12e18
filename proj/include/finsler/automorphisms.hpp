// SPDX-License-Identifier: MIT
#pragma once

#include "finsler/domains.hpp"

namespace finsler {

/// Normalizing automorphism Φ_{Z0} with Φ_{Z0}(Z0) = 0.
struct Automorphism {
    Kind kind = Kind::I;
    CMat z0;
    CMat a; ///< I–III: Hermitian factor; IV: unused
    CMat d; ///< I: Hermitian factor; IV: unused
    RMat x0; ///< IV: real 2×N
    RMat ar; ///< IV: real 2×2
    RMat dr; ///< IV: real N×N
};

Automorphism normalizer(const DomainSpec& spec, const CMat& z0);

CMat apply(const Automorphism& aut, const CMat& z);

/// Differential at Z0, carrying tangents at Z0 to tangents at 0.
CMat differential(const Automorphism& aut, const CMat& v);

/// Differential of Φ at an arbitrary interior point Z, applied to V.
CMat pushforward(const Automorphism& aut, const CMat& z, const CMat& v);

/// Matrix K with flatten(differential(V)) = flatten(V)·K in the chart of spec.
CMat kronecker_differential(const DomainSpec& spec, const Automorphism& aut);

/// A ⊗ B with rows (a,b), columns (i,j): A_ai·B_bj.
CMat kron(const CMat& a, const CMat& b);
/// Symmetric tensor product with p_ab·p_ij weights (rows/cols a ≤ b).
CMat sym_tensor(const CMat& b);
/// Skew tensor product (rows/cols a < b).
CMat skew_tensor(const CMat& b);

/// Δ(z) = 1 + |zz′|² − 2zz̄′
double delta_IV(const CMat& z);

/// Closed-form N×N Jacobian of Φ_{z0} at z0.
CMat jacobian_IV(const Automorphism& aut);

struct NormalizedIV {
    double r_tilde = 0.0;
    double s_tilde = 0.0;
};

/// r̃ = 2N·ξξ̄′, s̃ = |ξξ′|²/(ξξ̄′)² with ξ the push-forward of v to the origin.
NormalizedIV r_s_tilde(const DomainSpec& spec, const CMat& z, const CMat& v);
/// Same pair from the closed forms in z and v.
NormalizedIV r_s_tilde_closed(const DomainSpec& spec, const CMat& z, const CMat& v);

/// Z ↦ Z′ (square kind I).
CMat transpose_map(const CMat& z);
/// Entry permutation Z14 ↔ Z23 on 4×4 skew matrices.
CMat permute_q4(const CMat& z);

} // namespace finsler
