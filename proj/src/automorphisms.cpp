// SPDX-License-Identifier: MIT
#include "finsler/automorphisms.hpp"

#include <algorithm>
#include <cmath>

namespace finsler {

namespace {

constexpr double kMinMargin = 1e-8;
const cplx I1(0.0, 1.0);

CMat inverse_checked(const CMat& m) {
    Eigen::FullPivLU<CMat> lu(m);
    if (!lu.isInvertible())
        fail(ErrorCode::SingularPivot, "middle factor is singular");
    return lu.inverse();
}

RMat real_sym_sqrt_inverse(const RMat& g) {
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (g + g.transpose()));
    if (es.info() != Eigen::Success || es.eigenvalues()(0) <= 0.0)
        fail(ErrorCode::NumericalBreakdown, "Gram matrix is not positive definite");
    RVec inv_root = es.eigenvalues().array().rsqrt();
    RMat s = es.eigenvectors() * inv_root.asDiagonal() * es.eigenvectors().transpose();
    return 0.5 * (s + s.transpose());
}

CMat class_project(Kind kind, const CMat& w) {
    if (kind == Kind::II)
        return 0.5 * (w + w.transpose());
    if (kind == Kind::III)
        return 0.5 * (w - w.transpose());
    return w;
}

DomainSpec shape_spec(const Automorphism& aut) {
    DomainSpec s;
    s.kind = aut.kind;
    s.relaxed = true;
    const auto r = static_cast<int>(aut.z0.rows());
    const auto c = static_cast<int>(aut.z0.cols());
    s.m = r;
    s.n = c;
    s.p = r;
    s.q = r;
    s.N = c;
    return s;
}

cplx zzt(const CMat& z) { return (z * z.transpose())(0, 0); }

} // namespace

Automorphism normalizer(const DomainSpec& spec, const CMat& z0in) {
    spec.validate();
    Membership mem = contains(spec, z0in);
    if (!mem.inside)
        fail(ErrorCode::NotInDomain, "base point is not inside the domain");
    if (mem.margin < kMinMargin)
        fail(ErrorCode::NumericalBreakdown, "base point is too close to the boundary");

    Automorphism aut;
    aut.kind = spec.kind;
    aut.z0 = symmetrize(spec, z0in);
    const CMat& z0 = aut.z0;

    switch (spec.kind) {
    case Kind::I: {
        CMat gm = CMat::Identity(spec.m, spec.m) - z0 * z0.adjoint();
        CMat gn = CMat::Identity(spec.n, spec.n) - z0.adjoint() * z0;
        aut.a = hermitian_sqrt(hpd_inverse(gm));
        aut.d = hermitian_sqrt(hpd_inverse(gn));
        break;
    }
    case Kind::II:
    case Kind::III: {
        // I − Z0Z̄0 for II, I + Z0Z̄0 for III; both equal I − Z0Z̄0′.
        CMat g = CMat::Identity(z0.rows(), z0.rows()) - z0 * z0.adjoint();
        aut.a = hermitian_sqrt(hpd_inverse(g));
        break;
    }
    case Kind::IV: {
        const cplx a = zzt(z0);
        const double c = -1.0 / (1.0 - std::norm(a));
        CMat rows(2, spec.N);
        rows.row(0) = (std::conj(a) - 1.0) * z0.row(0) + (a - 1.0) * z0.row(0).conjugate();
        rows.row(1) = I1 * (a + 1.0) * z0.row(0).conjugate() - I1 * (std::conj(a) + 1.0) * z0.row(0);
        rows *= c;
        aut.x0 = rows.real();
        RMat g2 = RMat::Identity(2, 2) - aut.x0 * aut.x0.transpose();
        RMat gn = RMat::Identity(spec.N, spec.N) - aut.x0.transpose() * aut.x0;
        aut.ar = real_sym_sqrt_inverse(g2);
        aut.dr = real_sym_sqrt_inverse(gn);
        break;
    }
    }
    return aut;
}

CMat apply(const Automorphism& aut, const CMat& zin) {
    const CMat& z0 = aut.z0;
    if (zin.rows() != z0.rows() || zin.cols() != z0.cols())
        fail(ErrorCode::ShapeMismatch, "apply: point has the wrong shape");
    const CMat z = class_project(aut.kind, zin);
    switch (aut.kind) {
    case Kind::I: {
        CMat mid = CMat::Identity(z.cols(), z.cols()) - z0.adjoint() * z;
        return aut.a * (z - z0) * inverse_checked(mid) * inverse_checked(aut.d);
    }
    case Kind::II: {
        CMat mid = CMat::Identity(z.cols(), z.cols()) - z0.conjugate() * z;
        CMat w = aut.a * (z - z0) * inverse_checked(mid) * inverse_checked(aut.a.conjugate());
        return class_project(aut.kind, w);
    }
    case Kind::III: {
        CMat mid = CMat::Identity(z.cols(), z.cols()) + z0.conjugate() * z;
        CMat w = aut.a * (z - z0) * inverse_checked(mid) * inverse_checked(aut.a.conjugate());
        return class_project(aut.kind, w);
    }
    case Kind::IV: {
        const cplx a = zzt(z);
        CMat p(1, 2);
        p << (1.0 + a) / 2.0, (1.0 - a) / (2.0 * I1);
        CMat x0 = aut.x0.cast<cplx>();
        CVec one_i(2);
        one_i << 1.0, I1;
        cplx ell = ((p - z * x0.transpose()) * aut.ar.cast<cplx>() * one_i)(0, 0);
        if (std::abs(ell) == 0.0)
            fail(ErrorCode::SingularPivot, "scalar prefactor vanished");
        CMat m = z - p * x0;
        return (m / ell) * aut.dr.cast<cplx>();
    }
    }
    return {};
}

CMat differential(const Automorphism& aut, const CMat& v) {
    if (v.rows() != aut.z0.rows() || v.cols() != aut.z0.cols())
        fail(ErrorCode::ShapeMismatch, "differential: tangent has the wrong shape");
    switch (aut.kind) {
    case Kind::I:
        return aut.a * v * aut.d.adjoint();
    case Kind::II:
    case Kind::III: {
        DomainSpec s = shape_spec(aut);
        check_symmetry(s, v);
        return class_project(aut.kind, aut.a * v * aut.a.transpose());
    }
    case Kind::IV:
        return v * jacobian_IV(aut);
    }
    return {};
}

CMat pushforward(const Automorphism& aut, const CMat& zin, const CMat& vin) {
    const CMat& z0 = aut.z0;
    if (zin.rows() != z0.rows() || zin.cols() != z0.cols() || vin.rows() != z0.rows() ||
        vin.cols() != z0.cols())
        fail(ErrorCode::ShapeMismatch, "pushforward: wrong shapes");
    const CMat z = class_project(aut.kind, zin);
    const CMat v = class_project(aut.kind, vin);
    switch (aut.kind) {
    case Kind::I: {
        CMat m = inverse_checked(CMat::Identity(z.cols(), z.cols()) - z0.adjoint() * z);
        CMat inner = v * m + (z - z0) * m * z0.adjoint() * v * m;
        return aut.a * inner * inverse_checked(aut.d);
    }
    case Kind::II: {
        CMat m = inverse_checked(CMat::Identity(z.cols(), z.cols()) - z0.conjugate() * z);
        CMat inner = v * m + (z - z0) * m * z0.conjugate() * v * m;
        return class_project(aut.kind, aut.a * inner * inverse_checked(aut.a.conjugate()));
    }
    case Kind::III: {
        CMat m = inverse_checked(CMat::Identity(z.cols(), z.cols()) + z0.conjugate() * z);
        CMat inner = v * m - (z - z0) * m * z0.conjugate() * v * m;
        return class_project(aut.kind, aut.a * inner * inverse_checked(aut.a.conjugate()));
    }
    case Kind::IV: {
        const cplx a = zzt(z);
        const cplx da = (z * v.transpose())(0, 0); // half of d(zz′)
        CMat p(1, 2), dp(1, 2);
        p << (1.0 + a) / 2.0, (1.0 - a) / (2.0 * I1);
        dp << da, -da / I1;
        CMat x0 = aut.x0.cast<cplx>();
        CMat ar = aut.ar.cast<cplx>();
        CVec one_i(2);
        one_i << 1.0, I1;
        cplx ell = ((p - z * x0.transpose()) * ar * one_i)(0, 0);
        cplx dell = ((dp - v * x0.transpose()) * ar * one_i)(0, 0);
        CMat m = z - p * x0;
        CMat dm = v - dp * x0;
        return ((dm * ell - m * dell) / (ell * ell)) * aut.dr.cast<cplx>();
    }
    }
    return {};
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMat sym_tensor(const CMat& b) {
    const auto n = static_cast<int>(b.rows());
    const int d = n * (n + 1) / 2;
    const double r2 = 1.0 / std::sqrt(2.0);
    CMat c(d, d);
    int row = 0;
    for (int a1 = 0; a1 < n; ++a1)
        for (int b1 = a1; b1 < n; ++b1, ++row) {
            int col = 0;
            double pab = a1 == b1 ? r2 : 1.0;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j, ++col) {
                    double pij = i == j ? r2 : 1.0;
                    c(row, col) = pab * pij * (b(a1, i) * b(b1, j) + b(a1, j) * b(b1, i));
                }
        }
    return c;
}

CMat skew_tensor(const CMat& b) {
    const auto n = static_cast<int>(b.rows());
    const int d = n * (n - 1) / 2;
    CMat c(d, d);
    int row = 0;
    for (int a1 = 0; a1 < n; ++a1)
        for (int b1 = a1 + 1; b1 < n; ++b1, ++row) {
            int col = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++col)
                    c(row, col) = b(a1, i) * b(b1, j) - b(a1, j) * b(b1, i);
        }
    return c;
}

CMat kronecker_differential(const DomainSpec& spec, const Automorphism& aut) {
    switch (spec.kind) {
    case Kind::I: return kron(aut.a.transpose(), aut.d.adjoint());
    case Kind::II: return sym_tensor(aut.a.transpose());
    case Kind::III: return skew_tensor(aut.a.transpose());
    case Kind::IV: return jacobian_IV(aut);
    }
    return {};
}

double delta_IV(const CMat& z) {
    return 1.0 + std::norm(zzt(z)) - 2.0 * z.squaredNorm();
}

CMat jacobian_IV(const Automorphism& aut) {
    if (aut.kind != Kind::IV)
        fail(ErrorCode::BadParams, "jacobian_IV needs a kind IV automorphism");
    const CMat& z0 = aut.z0;
    const auto n = z0.cols();
    const cplx a = zzt(z0);
    CVec col = z0.row(0).transpose();
    CMat outer_zzb = col * col.adjoint();             // z0′ z̄0
    CMat outer_zbz = col.conjugate() * col.transpose(); // z̄0′ z0
    CMat inner = CMat::Identity(n, n) - outer_zbz;
    CMat j = CMat::Identity(n, n) - (2.0 / (1.0 - std::norm(a))) * outer_zzb * inner;
    return (j * aut.dr.transpose().cast<cplx>()) / std::sqrt(delta_IV(z0));
}

static void check_iv_pair(const DomainSpec& spec, const CMat& z, const CMat& v) {
    if (spec.kind != Kind::IV)
        fail(ErrorCode::BadParams, "r_s_tilde needs a kind IV spec");
    check_shape(spec, z);
    check_shape(spec, v);
    if (v.isZero(0.0))
        fail(ErrorCode::ZeroTangent, "r_s_tilde needs a nonzero tangent");
    if (!contains(spec, z).inside)
        fail(ErrorCode::NotInDomain, "point is not inside the domain");
}

NormalizedIV r_s_tilde(const DomainSpec& spec, const CMat& z, const CMat& v) {
    check_iv_pair(spec, z, v);
    CMat xi = differential(normalizer(spec, z), v);
    double rr = xi.squaredNorm();
    NormalizedIV out;
    out.r_tilde = 2.0 * spec.N * rr;
    out.s_tilde = std::clamp(std::norm(zzt(xi)) / (rr * rr), 0.0, 1.0);
    return out;
}

NormalizedIV r_s_tilde_closed(const DomainSpec& spec, const CMat& z, const CMat& v) {
    check_iv_pair(spec, z, v);
    const double dl = delta_IV(z);
    const cplx a = zzt(z);
    const cplx alpha = (v * z.transpose())(0, 0);  // v z0′
    const cplx beta = (v * z.adjoint())(0, 0);     // v z̄0′
    double quad = dl * v.squaredNorm() - 2.0 * std::real(std::conj(a) * alpha * std::conj(beta)) -
                  2.0 * (1.0 - 2.0 * z.squaredNorm()) * std::norm(alpha) +
                  2.0 * std::norm(beta) - 2.0 * std::real(a * beta * std::conj(alpha));
    NormalizedIV out;
    const double nn = spec.N;
    out.r_tilde = 2.0 * nn / (dl * dl) * quad;
    out.s_tilde = std::clamp(4.0 * nn * nn * std::norm(zzt(v)) /
                                 (dl * dl * out.r_tilde * out.r_tilde),
                             0.0, 1.0);
    return out;
}

CMat transpose_map(const CMat& z) { return z.transpose(); }

CMat permute_q4(const CMat& z) {
    if (z.rows() != 4 || z.cols() != 4)
        fail(ErrorCode::ShapeMismatch, "permute_q4 needs a 4x4 matrix");
    CMat w = z;
    w(0, 3) = z(1, 2);
    w(1, 2) = z(0, 3);
    w(3, 0) = z(2, 1);
    w(2, 1) = z(3, 0);
    return w;
}

} // namespace finsler
