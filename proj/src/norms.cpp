// SPDX-License-Identifier: MIT
#include "finsler/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace finsler {

namespace {

void check_tk(double t, int k) {
    if (!(t >= 0.0) || !std::isfinite(t))
        fail(ErrorCode::BadParams, "t must be a finite nonnegative number");
    if (k < 2)
        fail(ErrorCode::BadParams, "k must be >= 2");
}

// (Σσ_i^{2k})^{1/k} factored through the largest value, so nothing underflows.
double power_sum_root(const std::vector<double>& sv, int k) {
    if (sv.empty() || sv.front() == 0.0)
        return 0.0;
    double top = sv.front();
    double acc = 0.0;
    for (double s : sv)
        acc += std::pow(s / top, 2.0 * k);
    return top * top * std::pow(acc, 1.0 / k);
}

} // namespace

double kth_root(double bk, int k) {
    if (bk <= 0.0)
        return 0.0;
    if (bk < 1e-300)
        return std::exp(std::log(bk) / k);
    return std::pow(bk, 1.0 / k);
}

double minkowski_f2(const CMat& v, double t, int k) {
    check_tk(t, k);
    if (v.size() == 0 || v.isZero(0.0))
        return 0.0;
    CMat g = v * v.adjoint();
    double b1 = g.trace().real();
    double bk = trace_power(g, k).real();
    double root = bk < 1e-300 ? power_sum_root(singular_values(v), k) : kth_root(bk, k);
    return (b1 + t * root) / (1.0 + t);
}

double minkowski_f(const CMat& v, double t, int k) {
    return std::sqrt(minkowski_f2(v, t, k));
}

double minkowski_f2_sv(const CMat& v, double t, int k) {
    check_tk(t, k);
    auto sv = singular_values(v);
    double b1 = 0.0;
    for (double s : sv)
        b1 += s * s;
    return (b1 + t * power_sum_root(sv, k)) / (1.0 + t);
}

CMat hessian_origin(const DomainSpec& spec, const CMat& v) {
    spec.validate();
    if (spec.kind == Kind::IV)
        fail(ErrorCode::BadParams, "hessian_origin covers kinds I-III; use hessian_IV");
    check_symmetry(spec, v);
    if (v.isZero(0.0))
        fail(ErrorCode::ZeroTangent, "hessian_origin needs a nonzero tangent");

    const double t = spec.t;
    const int k = spec.k;
    const FlatteningChart chart(spec);
    const int d = chart.dim();

    CMat g = v * v.adjoint();
    CMat gp = v.adjoint() * v;
    std::vector<CMat> gpow(k + 1), gppow(k + 1);
    gpow[0] = CMat::Identity(g.rows(), g.cols());
    gppow[0] = CMat::Identity(gp.rows(), gp.cols());
    for (int i = 1; i <= k; ++i) {
        gpow[i] = gpow[i - 1] * g;
        gppow[i] = gppow[i - 1] * gp;
    }
    const CMat& p = gpow[k - 1];
    double big_a = gpow[k].trace().real();
    double a1 = t * std::pow(big_a, 1.0 / k - 1.0);
    double a2 = t * (k - 1) * std::pow(big_a, 1.0 / k - 2.0);

    std::vector<CMat> basis(d);
    std::vector<cplx> lin(d); // tr(E_a V̄′ P)
    for (int a = 0; a < d; ++a) {
        basis[a] = chart.basis(a);
        lin[a] = (basis[a] * v.adjoint() * p).trace();
    }

    CMat h(d, d);
    for (int a = 0; a < d; ++a) {
        const CMat& w = basis[a];
        for (int b = 0; b < d; ++b) {
            CMat ub = basis[b].adjoint();
            cplx quad = (w * ub).trace();
            cplx mixed = (w * ub * p).trace();
            for (int i = 0; i <= k - 2; ++i)
                mixed += (w * gppow[i + 1] * ub * gpow[k - i - 2]).trace();
            h(a, b) = quad + a1 * mixed - a2 * lin[a] * std::conj(lin[b]);
        }
    }
    h *= spec.scale() / (1.0 + t);
    return 0.5 * (h + h.adjoint());
}

double k_tilde(const PhiProfile& phi, double s) {
    double f = phi.eval(s), f1 = phi.d1(s), f2 = phi.d2(s);
    double pair = s * (1.0 - s);
    // s(1−s) vanishes at the endpoints; skip the product so infinite φ″ stays harmless.
    double tail = pair == 0.0 ? 0.0 : 4.0 * pair * (f * f2 - f1 * f1);
    double head = f * (f + 2.0 * (2.0 - 3.0 * s) * f1);
    return head + tail;
}

PhiValidation validate_phi(const PhiProfile& phi, int grid, double threshold) {
    PhiValidation out;
    auto cons = check_profile(phi);
    out.consistent = cons.positive && cons.derivatives_ok;
    out.min_margin_1 = std::numeric_limits<double>::infinity();
    out.min_margin_2 = std::numeric_limits<double>::infinity();
    bool finite = true;
    for (int i = 0; i < grid; ++i) {
        double s = static_cast<double>(i) / (grid - 1);
        double f1 = phi.d1(s);
        double m1 = phi.eval(s) - (s == 0.0 ? 0.0 : 2.0 * s * f1);
        double m2 = k_tilde(phi, s);
        if (!std::isfinite(m1) || !std::isfinite(m2)) {
            finite = false;
            if (std::isnan(m1)) m1 = -std::numeric_limits<double>::infinity();
            if (std::isnan(m2)) m2 = -std::numeric_limits<double>::infinity();
        }
        if (m1 < out.min_margin_1) {
            out.min_margin_1 = m1;
            out.argmin_s_1 = s;
        }
        if (m2 < out.min_margin_2) {
            out.min_margin_2 = m2;
            out.argmin_s_2 = s;
        }
    }
    out.argmin_s = out.min_margin_1 <= out.min_margin_2 ? out.argmin_s_1 : out.argmin_s_2;
    out.valid = finite && out.consistent && out.min_margin_1 > threshold &&
                out.min_margin_2 > threshold;
    return out;
}

IVNorm f_IV_norm(const CMat& xi, const PhiProfile& phi) {
    if (xi.rows() != 1)
        fail(ErrorCode::ShapeMismatch, "f_IV_norm needs a row vector");
    IVNorm out;
    out.r = xi.squaredNorm();
    if (out.r == 0.0)
        fail(ErrorCode::ZeroTangent, "f_IV_norm needs a nonzero vector");
    cplx a = (xi * xi.transpose())(0, 0);
    out.s = std::clamp(std::norm(a) / (out.r * out.r), 0.0, 1.0);
    out.value = std::sqrt(out.r * phi.eval(out.s));
    return out;
}

HessianIV hessian_IV(const CMat& xi, const PhiProfile& phi) {
    IVNorm nv = f_IV_norm(xi, phi);
    const double r = nv.r, s = nv.s;
    const double f = phi.eval(s), f1 = phi.d1(s), f2 = phi.d2(s);
    HessianIVSpectrum sp;
    sp.c0 = f - 2.0 * s * f1;
    sp.c1 = 4.0 * (f1 + s * f2);
    sp.c2 = -2.0 * (f1 + 2.0 * s * f2);
    sp.k_tilde = k_tilde(phi, s);
    sp.trace_half = f + (2.0 - 3.0 * s) * f1 + 2.0 * s * (1.0 - s) * f2;
    if (!std::isfinite(sp.c0) || !std::isfinite(sp.c1) || !std::isfinite(sp.c2) ||
        !std::isfinite(sp.k_tilde))
        fail(ErrorCode::InvalidProfile, "profile derivatives are not finite at s = " + std::to_string(s));
    if (!(sp.c0 > 0.0) || !(sp.k_tilde > 0.0))
        fail(ErrorCode::InvalidProfile,
             "profile violates strong pseudoconvexity at s = " + std::to_string(s));

    const int n = static_cast<int>(xi.cols());
    const cplx a = (xi * xi.transpose())(0, 0);
    CVec x = xi.row(0).transpose();
    CVec xc = x.conjugate();
    CMat h = sp.c0 * CMat::Identity(n, n);
    h += (sp.c1 / r) * x * xc.transpose();
    h += (sp.c2 / (r * r)) * (a * xc * xc.transpose() + std::conj(a) * x * x.transpose());
    h -= (s * sp.c2 / r) * xc * x.transpose();

    double disc = std::max(0.0, sp.trace_half * sp.trace_half - sp.k_tilde);
    double big = sp.trace_half + std::sqrt(disc);
    double small = big > 0.0 ? sp.k_tilde / big : sp.trace_half - std::sqrt(disc);
    sp.predicted.assign(n - 2, sp.c0);
    sp.predicted.push_back(small);
    sp.predicted.push_back(big);
    std::sort(sp.predicted.begin(), sp.predicted.end());
    return {0.5 * (h + h.adjoint()), sp};
}

} // namespace finsler
