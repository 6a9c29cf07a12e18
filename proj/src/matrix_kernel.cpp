// SPDX-License-Identifier: MIT
#include "finsler/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace finsler {

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::SamplerExhausted: return "SamplerExhausted";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::ZeroTangent: return "ZeroTangent";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::NotInDomain: return "NotInDomain";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::SingularPivot: return "SingularPivot";
    case ErrorCode::UsageError: return "UsageError";
    }
    return "Unknown";
}

const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

double rel_frob_error(const CMat& a, const CMat& b) {
    return (a - b).norm() / std::max(1.0, b.norm());
}

double hermitian_defect(const CMat& m) {
    if (m.rows() != m.cols())
        fail(ErrorCode::NotSquare, "matrix is not square");
    double scale = std::max(default_tolerances().abs_floor, m.norm());
    return (m - m.adjoint()).norm() / scale;
}

bool is_hermitian(const CMat& m, double tol) {
    return hermitian_defect(m) <= tol;
}

static void require_hermitian(const CMat& m) {
    if (m.rows() != m.cols())
        fail(ErrorCode::NotSquare, "matrix is not square");
    double d = hermitian_defect(m);
    if (d > default_tolerances().hermitian)
        fail(ErrorCode::NotHermitian,
             "matrix is not Hermitian (relative defect " + std::to_string(d) + ")");
}

HermitianEigen hermitian_eigen(const CMat& m) {
    require_hermitian(m);
    CMat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    if (es.info() != Eigen::Success)
        fail(ErrorCode::NumericalBreakdown, "Hermitian eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

double min_eigenvalue(const CMat& m) {
    CMat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

CMat hermitian_sqrt(const CMat& m) {
    HermitianEigen e = hermitian_eigen(m);
    if (e.values(0) <= 0.0)
        fail(ErrorCode::NotPositiveDefinite,
             "matrix is not positive definite (min eigenvalue " +
                 std::to_string(e.values(0)) + ")");
    RVec root = e.values.array().sqrt();
    CMat s = e.vectors * root.asDiagonal() * e.vectors.adjoint();
    return 0.5 * (s + s.adjoint());
}

cplx trace_power(const CMat& m, int l) {
    if (m.rows() != m.cols())
        fail(ErrorCode::NotSquare, "trace_power needs a square matrix");
    if (l < 1)
        fail(ErrorCode::BadParams, "trace_power needs l >= 1");
    CMat p = m;
    for (int i = 1; i < l; ++i)
        p = p * m;
    return p.trace();
}

std::vector<double> singular_values(const CMat& v) {
    if (v.size() == 0)
        return {};
    Eigen::JacobiSVD<CMat> svd(v);
    const RVec& s = svd.singularValues();
    std::vector<double> out(s.data(), s.data() + s.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double spectral_norm(const CMat& m) {
    auto s = singular_values(m);
    return s.empty() ? 0.0 : s.front();
}

CMat hpd_inverse(const CMat& m) {
    Eigen::LLT<CMat> llt(0.5 * (m + m.adjoint()));
    if (llt.info() != Eigen::Success)
        fail(ErrorCode::NotPositiveDefinite, "Cholesky factorization failed");
    return llt.solve(CMat::Identity(m.rows(), m.cols()));
}

} // namespace finsler
