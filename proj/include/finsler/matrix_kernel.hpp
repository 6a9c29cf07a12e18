// SPDX-License-Identifier: MIT
/**
 * @file matrix_kernel.hpp
 * @brief Dense complex matrix primitives.
 *
 * Thin contract layer over Eigen: every routine checks its preconditions
 * and throws finsler::Error with a stable code on violation.
 */
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "finsler/errors.hpp"

namespace finsler {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Central tolerance knobs: absolute floor plus Frobenius-relative scaling.
struct Tolerances {
    double abs_floor = 1e-12;
    double hermitian = 1e-12;
};

const Tolerances& default_tolerances();

/// ‖A − B‖_F / max(1, ‖B‖_F)
double rel_frob_error(const CMat& a, const CMat& b);

/// Relative Frobenius asymmetry ‖M − M*‖_F / max(floor, ‖M‖_F).
double hermitian_defect(const CMat& m);
bool is_hermitian(const CMat& m, double tol = default_tolerances().hermitian);

/// Hermitian positive-definite principal square root.
CMat hermitian_sqrt(const CMat& m);

/// tr(M^l) by repeated multiplication.
cplx trace_power(const CMat& m, int l);

/// Singular values in nonincreasing order.
std::vector<double> singular_values(const CMat& v);

struct HermitianEigen {
    RVec values;  ///< nondecreasing
    CMat vectors; ///< unitary, columns are eigenvectors
};

HermitianEigen hermitian_eigen(const CMat& m);

/// Smallest eigenvalue of a Hermitian matrix (no symmetry check).
double min_eigenvalue(const CMat& m);

/// Spectral norm (largest singular value).
double spectral_norm(const CMat& m);

/// Inverse of a Hermitian positive-definite matrix; throws NotPositiveDefinite.
CMat hpd_inverse(const CMat& m);

inline CMat conj_transpose(const CMat& m) { return m.adjoint(); }

} // namespace finsler
