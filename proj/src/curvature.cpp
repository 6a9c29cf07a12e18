// SPDX-License-Identifier: MIT
#include "finsler/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "finsler/automorphisms.hpp"
#include "finsler/metrics.hpp"
#include "finsler/norms.hpp"
#include "finsler/verify.hpp"

namespace finsler {

namespace {

const cplx I1(0.0, 1.0);

void require_pair(const DomainSpec& spec, const CMat& z, const CMat& v) {
    spec.validate();
    check_symmetry(spec, z);
    check_symmetry(spec, v);
    if (v.isZero(0.0))
        fail(ErrorCode::ZeroTangent, "curvature needs a nonzero tangent");
    if (!contains(spec, z).inside)
        fail(ErrorCode::NotInDomain, "point is not inside the domain");
}

// φ − 2sφ′, finite or InvalidProfile
double c0_of(const PhiProfile& phi, double s) {
    double c0 = phi.eval(s) - (s == 0.0 ? 0.0 : 2.0 * s * phi.d1(s));
    if (!std::isfinite(c0))
        fail(ErrorCode::InvalidProfile, "profile derivative is not finite at s = " + std::to_string(s));
    return c0;
}

struct Powers {
    double b1, b2, bk, bk1;
};

Powers powers(const CMat& t, int k) {
    Powers p{};
    CMat acc = t;
    p.b1 = acc.trace().real();
    for (int l = 2; l <= k + 1; ++l) {
        acc = acc * t;
        if (l == 2) p.b2 = acc.trace().real();
        if (l == k) p.bk = acc.trace().real();
        if (l == k + 1) p.bk1 = acc.trace().real();
    }
    return p;
}

CMat mat_power(const CMat& m, int l) {
    CMat p = m;
    for (int i = 1; i < l; ++i)
        p = p * m;
    return p;
}

double bisectional_origin_iv(const DomainSpec& spec, const CMat& xi, const CMat& eta) {
    const double nn = spec.N;
    auto rs = [&](const CMat& x) {
        double r = x.squaredNorm();
        double s = std::clamp(std::norm((x * x.transpose())(0, 0)) / (r * r), 0.0, 1.0);
        return std::pair<double, double>(2.0 * nn * r, s);
    };
    auto [rx, sx] = rs(xi);
    auto [re, se] = rs(eta);
    double fx = spec.phi.eval(sx);
    double c0 = c0_of(spec.phi, sx);
    double herm = std::norm((xi * eta.adjoint())(0, 0));
    double bil = std::norm((xi * eta.transpose())(0, 0));
    double num = rx * re * fx + 4.0 * nn * nn * c0 * (herm - bil);
    return -(2.0 / nn) * num / (rx * fx * re * spec.phi.eval(se));
}

double golden_section(const std::function<double(double)>& f, double a, double b) {
    // minimizes f on [a, b]
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-12) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// argmin over [0,1]: grid scan, then golden section on the neighbouring cell pair
double refine_min(const std::function<double(double)>& f, int grid) {
    int best = 0;
    double best_v = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        double v = f(static_cast<double>(i) / (grid - 1));
        if (v < best_v) {
            best_v = v;
            best = i;
        }
    }
    double lo = std::max(0, best - 1) / static_cast<double>(grid - 1);
    double hi = std::min(grid - 1, best + 1) / static_cast<double>(grid - 1);
    double s = golden_section(f, lo, hi);
    double s_grid = best / static_cast<double>(grid - 1);
    return f(s) < f(s_grid) ? s : s_grid;
}

} // namespace

double kind_iv_curvature_profile(const DomainSpec& spec, double s) {
    double f = spec.phi.eval(s);
    double tail = s >= 1.0 ? 0.0 : (1.0 - s) * c0_of(spec.phi, s);
    return 2.0 * (f + tail) / (spec.N * f * f);
}

CMat kind_iv_tangent_with_s(int N, double s) {
    double theta = 0.5 * std::acos(std::sqrt(std::clamp(s, 0.0, 1.0)));
    CMat v = CMat::Zero(1, N);
    v(0, 0) = std::cos(theta);
    v(0, 1) = I1 * std::sin(theta);
    return v;
}

double sectional(const DomainSpec& spec, const CMat& z, const CMat& vin) {
    require_pair(spec, z, vin);
    const CMat v = symmetrize(spec, vin) / vin.norm();
    if (spec.kind == Kind::IV) {
        NormalizedIV rs = r_s_tilde_closed(spec, z, v);
        return -kind_iv_curvature_profile(spec, rs.s_tilde);
    }
    const double c = spec.scale(), t = spec.t;
    BaseFrame frame(symmetrize(spec, z));
    Powers p = powers(frame.block(v), spec.k);
    double f2 = c / (1.0 + t) * (p.b1 + t * kth_root(p.bk, spec.k));
    double num = p.b2 + t * std::pow(p.bk, 1.0 / spec.k - 1.0) * p.bk1;
    return -4.0 * c / (1.0 + t) * num / (f2 * f2);
}

double bisectional(const DomainSpec& spec, const CMat& z, const CMat& vin, const CMat& win) {
    require_pair(spec, z, vin);
    require_pair(spec, z, win);
    const CMat v = symmetrize(spec, vin) / vin.norm();
    const CMat w = symmetrize(spec, win) / win.norm();
    if (spec.kind == Kind::IV) {
        if (z.isZero(0.0))
            return bisectional_origin_iv(spec, v, w);
        Automorphism aut = normalizer(spec, z);
        CMat j = jacobian_IV(aut);
        return bisectional_origin_iv(spec, v * j, w * j);
    }
    const double c = spec.scale(), t = spec.t;
    const int k = spec.k;
    const CMat zs = symmetrize(spec, z);
    BaseFrame frame(zs);
    CMat tv = frame.block(v);
    CMat tw = frame.block(w);
    Powers pv = powers(tv, k);
    double bw1 = tw.trace().real();
    double bwk = trace_power(tw, k).real();
    double fv2 = c / (1.0 + t) * (pv.b1 + t * kth_root(pv.bk, k));
    double fw2 = c / (1.0 + t) * (bw1 + t * kth_root(bwk, k));
    double weight = t * std::pow(pv.bk, 1.0 / k - 1.0);
    double b11 = (tv * tw).trace().real();
    double bk1 = (mat_power(tv, k) * tw).trace().real();
    if (spec.kind == Kind::I) {
        // transpose pair: base point Z̄′, tangents V̄′, W̄′
        CMat tvt = frame.right * v.adjoint() * frame.left * v;
        CMat twt = frame.right * w.adjoint() * frame.left * w;
        double b11t = (tvt * twt).trace().real();
        double bk1t = (mat_power(tvt, k) * twt).trace().real();
        double num = b11 + b11t + weight * (bk1 + bk1t);
        return -2.0 * c / ((1.0 + t) * fv2 * fw2) * num;
    }
    return -4.0 * c / (1.0 + t) * (b11 + weight * bk1) / (fv2 * fw2);
}

CurvatureBounds sectional_bounds(const DomainSpec& spec) {
    spec.validate();
    CurvatureBounds b;
    const double t = spec.t;
    const double k = spec.k;
    auto upper_for = [&](double c, double x) { return -4.0 / c * (1.0 + t) / (x + t * std::pow(x, 1.0 / k)); };
    switch (spec.kind) {
    case Kind::I: {
        const double c = spec.scale();
        b.lower = -4.0 / c;
        b.upper = upper_for(c, spec.m);
        b.attains_lower = CMat::Zero(spec.m, spec.n);
        b.attains_lower(0, 0) = 1.0;
        b.attains_upper = CMat::Zero(spec.m, spec.n);
        for (int i = 0; i < spec.m; ++i)
            b.attains_upper(i, i) = 1.0;
        break;
    }
    case Kind::II: {
        const double c = spec.scale();
        b.lower = -4.0 / c;
        b.upper = upper_for(c, spec.p);
        b.attains_lower = CMat::Zero(spec.p, spec.p);
        b.attains_lower(0, 0) = 1.0;
        b.attains_upper = CMat::Identity(spec.p, spec.p);
        break;
    }
    case Kind::III: {
        const double c = spec.scale();
        const int pairs = spec.q / 2;
        b.lower = upper_for(c, 2.0);
        b.upper = upper_for(c, 2.0 * pairs);
        b.attains_lower = CMat::Zero(spec.q, spec.q);
        b.attains_lower(0, 1) = 1.0;
        b.attains_lower(1, 0) = -1.0;
        b.attains_upper = CMat::Zero(spec.q, spec.q);
        for (int i = 0; i < pairs; ++i) {
            b.attains_upper(2 * i, 2 * i + 1) = 1.0;
            b.attains_upper(2 * i + 1, 2 * i) = -1.0;
        }
        break;
    }
    case Kind::IV: {
        auto g = [&](double s) { return kind_iv_curvature_profile(spec, s); };
        double s_max = refine_min([&](double s) { return -g(s); }, 2001);
        double s_min = refine_min(g, 2001);
        b.lower = -g(s_max);
        b.upper = -g(s_min);
        b.s_lower = s_max;
        b.s_upper = s_min;
        b.attains_lower = kind_iv_tangent_with_s(spec.N, s_max);
        b.attains_upper = kind_iv_tangent_with_s(spec.N, s_min);
        break;
    }
    }
    return b;
}

BisectionalBounds bisectional_bounds(const DomainSpec& spec) {
    spec.validate();
    BisectionalBounds b;
    const double t = spec.t;
    switch (spec.kind) {
    case Kind::I:
        b.lower = -4.0 / spec.scale();
        break;
    case Kind::II:
        b.lower = -4.0 / spec.scale();
        break;
    case Kind::III:
        b.lower = -4.0 * (1.0 + t) / (spec.scale() * (2.0 + t * std::pow(2.0, 1.0 / spec.k)));
        break;
    case Kind::IV: {
        const int grid = 2001;
        double min_phi = std::numeric_limits<double>::infinity();
        double max_ratio = 0.0;
        bool monotone = true;
        for (int i = 0; i < grid; ++i) {
            double s = static_cast<double>(i) / (grid - 1);
            double f = spec.phi.eval(s);
            double f1 = spec.phi.d1(s);
            if (!(f1 >= 0.0))
                monotone = false;
            min_phi = std::min(min_phi, f);
            if (monotone)
                max_ratio = std::max(max_ratio, 1.0 + c0_of(spec.phi, s) / f);
        }
        if (!monotone) {
            b.applicable = false;
            b.note = "profile has phi' < 0 somewhere; no sign or floor is asserted";
            return b;
        }
        b.lower = -(2.0 / spec.N) * max_ratio / min_phi;
        b.naive_lower = -2.0 / (spec.N * min_phi);
        b.note = "floor -(2/N) max(1 + c0/phi) / min(phi); naive_lower = -2/(N min phi) is not a floor, "
                 "B(v,v) = K(v) drops below it";
        break;
    }
    }
    b.upper = 0.0;
    return b;
}

CMat fd_complex_hessian(const std::function<double(const CVec&)>& f, const CVec& x, double h) {
    const auto d = x.size();
    CMat hess(d, d);
    auto d2 = [&](const CVec& a, const CVec& b) {
        return (f(x + h * a + h * b) - f(x + h * a - h * b) - f(x - h * a + h * b) +
                f(x - h * a - h * b)) /
               (4.0 * h * h);
    };
    for (Eigen::Index i = 0; i < d; ++i) {
        CVec ei = CVec::Zero(d);
        ei(i) = 1.0;
        for (Eigen::Index j = 0; j < d; ++j) {
            CVec ej = CVec::Zero(d);
            ej(j) = 1.0;
            double xx = d2(ei, ej), yy = d2(I1 * ei, I1 * ej);
            double xy = d2(ei, I1 * ej), yx = d2(I1 * ei, ej);
            hess(i, j) = 0.25 * cplx(xx + yy, xy - yx);
        }
    }
    return hess;
}

CMat fd_base_hessian(const DomainSpec& spec, const CMat& v, double h) {
    const FlatteningChart chart(spec);
    auto f = [&](const CVec& z) { return metric(spec, chart.unflatten(z), v).F_squared; };
    return fd_complex_hessian(f, CVec::Zero(chart.dim()), h);
}

CMat fd_vertical_hessian(const DomainSpec& spec, const CMat& v, double h) {
    spec.validate();
    check_symmetry(spec, v);
    if (v.isZero(0.0))
        fail(ErrorCode::ZeroTangent, "vertical Hessian needs a nonzero tangent");
    const FlatteningChart chart(spec);
    std::function<double(const CVec&)> f;
    if (spec.kind == Kind::IV)
        f = [&](const CVec& x) { return std::pow(f_IV_norm(chart.unflatten(x), spec.phi).value, 2); };
    else
        f = [&](const CVec& x) { return spec.scale() * minkowski_f2(chart.unflatten(x), spec.t, spec.k); };
    return fd_complex_hessian(f, chart.flatten(v), h);
}

double fd_sectional_oracle(const DomainSpec& spec, const CMat& vin, double h) {
    CMat zero = CMat::Zero(spec.rows(), spec.cols());
    require_pair(spec, zero, vin);
    const CMat v = vin / vin.norm();
    const FlatteningChart chart(spec);
    CMat hess = fd_base_hessian(spec, v, h);
    CVec x = chart.flatten(v);
    double f2 = metric(spec, zero, v).F_squared;
    double contraction = (x.transpose() * hess * x.conjugate())(0, 0).real();
    return -2.0 / (f2 * f2) * contraction;
}

double fd_bisectional_oracle(const DomainSpec& spec, const CMat& vin, const CMat& win, double h) {
    CMat zero = CMat::Zero(spec.rows(), spec.cols());
    require_pair(spec, zero, vin);
    require_pair(spec, zero, win);
    const CMat v = vin / vin.norm();
    const CMat w = win / win.norm();
    const FlatteningChart chart(spec);
    CMat hess = fd_base_hessian(spec, v, h);
    CVec y = chart.flatten(w);
    double fv2 = metric(spec, zero, v).F_squared;
    double fw2 = metric(spec, zero, w).F_squared;
    double contraction = (y.transpose() * hess * y.conjugate())(0, 0).real();
    return -2.0 / (fv2 * fw2) * contraction;
}

double kahler_berwald_residual(const DomainSpec& spec, const CMat& vin, double h) {
    CMat zero = CMat::Zero(spec.rows(), spec.cols());
    require_pair(spec, zero, vin);
    const FlatteningChart chart(spec);
    const CVec v0 = chart.flatten(vin / vin.norm());
    const auto d = v0.size();
    auto g = [&](const CVec& z, const CVec& v) {
        return metric(spec, chart.unflatten(z), chart.unflatten(v)).F_squared;
    };
    auto d2 = [&](const CVec& a, const CVec& b) {
        return (g(h * a, v0 + h * b) - g(h * a, v0 - h * b) - g(-h * a, v0 + h * b) +
                g(-h * a, v0 - h * b)) /
               (4.0 * h * h);
    };
    double worst = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        CVec ei = CVec::Zero(d);
        ei(i) = 1.0;
        for (Eigen::Index j = 0; j < d; ++j) {
            CVec ej = CVec::Zero(d);
            ej(j) = 1.0;
            double xx = d2(ei, ej), yy = d2(I1 * ei, I1 * ej);
            double xy = d2(ei, I1 * ej), yx = d2(I1 * ei, ej);
            worst = std::max(worst, std::abs(0.25 * cplx(xx + yy, xy - yx)));
        }
    }
    return worst;
}

CurvatureReport curvature_report(const DomainSpec& spec, const CMat& z, const CMat& v,
                                 const std::optional<CMat>& w, bool oracle, double h,
                                 std::uint64_t seed) {
    CurvatureReport rep;
    rep.K = sectional(spec, z, v);
    if (w)
        rep.B = bisectional(spec, z, v, *w);
    CurvatureBounds b = sectional_bounds(spec);
    rep.lower = b.lower;
    rep.upper = b.upper;
    std::vector<CMat> mats{z, v};
    if (w)
        mats.push_back(*w);
    rep.inputs_digest = inputs_digest(spec, mats, seed);
    if (!oracle)
        return rep;
    if (!(h >= 1e-6 && h <= 1e-3))
        fail(ErrorCode::BadParams, "fd step must lie in [1e-6, 1e-3]");
    CMat v0 = v, w0 = w ? *w : CMat();
    if (!z.isZero(0.0)) {
        Automorphism aut = normalizer(spec, z);
        v0 = differential(aut, v);
        if (w)
            w0 = differential(aut, *w);
    }
    rep.oracle_K = fd_sectional_oracle(spec, v0, h);
    double gap = std::abs(*rep.oracle_K - rep.K) / std::abs(rep.K);
    if (w) {
        rep.oracle_B = fd_bisectional_oracle(spec, v0, w0, h);
        gap = std::max(gap, std::abs(*rep.oracle_B - *rep.B) /
                                std::max(std::abs(*rep.B), default_tolerances().abs_floor));
    }
    rep.oracle_residual = gap;
    return rep;
}

} // namespace finsler
