// SPDX-License-Identifier: MIT
#include "finsler/metrics.hpp"

#include <cmath>

#include "finsler/automorphisms.hpp"
#include "finsler/norms.hpp"

namespace finsler {

namespace {

CMat inverse_in_domain(const CMat& g) {
    try {
        return hpd_inverse(g);
    } catch (const Error&) {
        fail(ErrorCode::NotInDomain, "point is not inside the domain");
    }
}

double real_trace(const cplx& c) { return c.real(); }

CMat mat_power(const CMat& m, int l) {
    CMat p = m;
    for (int i = 1; i < l; ++i)
        p = p * m;
    return p;
}

void require_interior(const DomainSpec& spec, const CMat& z) {
    Membership mem = contains(spec, z);
    if (!mem.inside)
        fail(ErrorCode::NotInDomain, "point is not inside the domain");
}

} // namespace

BaseFrame::BaseFrame(const CMat& z)
    : left(inverse_in_domain(CMat::Identity(z.rows(), z.rows()) - z * z.adjoint())),
      right(inverse_in_domain(CMat::Identity(z.cols(), z.cols()) - z.adjoint() * z)) {}

CMat BaseFrame::block(const CMat& v) const {
    return left * v * right * v.adjoint();
}

double frak_B(int l, const CMat& z, const CMat& v) {
    if (l < 1)
        fail(ErrorCode::BadParams, "frak_B needs l >= 1");
    if (z.rows() != v.rows() || z.cols() != v.cols())
        fail(ErrorCode::ShapeMismatch, "frak_B: Z and V shapes differ");
    BaseFrame frame(z);
    return real_trace(trace_power(frame.block(v), l));
}

double cal_B(int i, int j, const CMat& z, const CMat& v, const CMat& w) {
    if (i < 1 || j < 1)
        fail(ErrorCode::BadParams, "cal_B needs i, j >= 1");
    if (z.rows() != v.rows() || z.cols() != v.cols() || z.rows() != w.rows() ||
        z.cols() != w.cols())
        fail(ErrorCode::ShapeMismatch, "cal_B: Z, V, W shapes differ");
    BaseFrame frame(z);
    CMat tv = frame.block(v);
    CMat tw = frame.block(w);
    return real_trace((mat_power(tv, i) * mat_power(tw, j)).trace());
}

MetricValue metric(const DomainSpec& spec, const CMat& z, const CMat& v) {
    spec.validate();
    check_symmetry(spec, z);
    check_symmetry(spec, v);
    if (v.isZero(0.0))
        fail(ErrorCode::ZeroTangent, "metric needs a nonzero tangent");
    MetricValue out;
    if (spec.kind == Kind::IV) {
        require_interior(spec, z);
        NormalizedIV rs = r_s_tilde_closed(spec, z, v);
        out.F_squared = rs.r_tilde * spec.phi.eval(rs.s_tilde);
        out.F = std::sqrt(out.F_squared);
        out.components["r_tilde"] = rs.r_tilde;
        out.components["s_tilde"] = rs.s_tilde;
        return out;
    }
    require_interior(spec, z);
    const CMat zs = symmetrize(spec, z);
    const CMat vs = symmetrize(spec, v);
    BaseFrame frame(zs);
    CMat tv = frame.block(vs);
    double b1 = real_trace(tv.trace());
    double bk = real_trace(trace_power(tv, spec.k));
    double root;
    if (bk < 1e-300) {
        // 𝔅_k from the singular values of (I−ZZ̄′)^{-1/2} V (I−Z̄′Z)^{-1/2}
        CMat sym = hermitian_sqrt(frame.left) * vs * hermitian_sqrt(frame.right);
        auto sv = singular_values(sym);
        double top = sv.front(), acc = 0.0;
        for (double s : sv)
            acc += std::pow(s / top, 2.0 * spec.k);
        root = top * top * std::pow(acc, 1.0 / spec.k);
    } else {
        root = kth_root(bk, spec.k);
    }
    out.F_squared = spec.scale() / (1.0 + spec.t) * (b1 + spec.t * root);
    out.F = std::sqrt(out.F_squared);
    out.components["B_1"] = b1;
    out.components["B_k"] = bk;
    return out;
}

double bergman(const DomainSpec& spec, const CMat& z, const CMat& v) {
    spec.validate();
    check_symmetry(spec, z);
    check_symmetry(spec, v);
    require_interior(spec, z);
    if (v.isZero(0.0))
        return 0.0;
    if (spec.kind == Kind::IV)
        return r_s_tilde_closed(spec, z, v).r_tilde;
    BaseFrame frame(symmetrize(spec, z));
    return spec.scale() * real_trace(frame.block(symmetrize(spec, v)).trace());
}

double reference_norm_CK(const DomainSpec& spec, const CMat& xi) {
    check_symmetry(spec, xi);
    if (xi.isZero(0.0))
        fail(ErrorCode::ZeroTangent, "reference norm needs a nonzero tangent");
    if (spec.kind == Kind::IV) {
        double r = xi.squaredNorm();
        double a2 = std::norm((xi * xi.transpose())(0, 0));
        return std::sqrt(r + std::sqrt(std::max(0.0, r * r - a2)));
    }
    return spectral_norm(xi);
}

} // namespace finsler
