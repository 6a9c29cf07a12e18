// SPDX-License-Identifier: MIT
#include "finsler/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "finsler/automorphisms.hpp"
#include "finsler/curvature.hpp"
#include "finsler/metrics.hpp"
#include "finsler/norms.hpp"

namespace finsler {

const char* to_string(Suite suite) {
    switch (suite) {
    case Suite::Invariance: return "invariance";
    case Suite::Pseudoconvexity: return "pseudoconvexity";
    case Suite::KahlerBerwald: return "kahler-berwald";
    case Suite::CurvatureOracle: return "curvature-oracle";
    case Suite::Bounds: return "bounds";
    }
    return "?";
}

Suite suite_from_string(const std::string& s) {
    for (Suite x : {Suite::Invariance, Suite::Pseudoconvexity, Suite::KahlerBerwald,
                    Suite::CurvatureOracle, Suite::Bounds})
        if (s == to_string(x))
            return x;
    fail(ErrorCode::UsageError, "unknown suite '" + s + "'");
}

double default_tolerance(Suite suite) {
    switch (suite) {
    case Suite::Invariance: return 1e-8;
    case Suite::Pseudoconvexity: return 1e-10;
    case Suite::KahlerBerwald: return 1e-5;
    case Suite::CurvatureOracle: return 5e-4;
    case Suite::Bounds: return 1e-9;
    }
    return 0.0;
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

int VerificationReport::failures() const {
    return static_cast<int>(
        std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

namespace {

struct Fnv {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    void bytes(const void* p, std::size_t n) {
        const auto* c = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= c[i];
            h *= 0x100000001b3ULL;
        }
    }
    void str(const std::string& s) { bytes(s.data(), s.size()); }
    void num(double x) { bytes(&x, sizeof x); }
};

} // namespace

std::string inputs_digest(const DomainSpec& spec, const std::vector<CMat>& mats, std::uint64_t seed) {
    Fnv f;
    f.str(spec.label());
    f.num(spec.t);
    f.num(spec.k);
    f.str(spec.phi.name);
    for (const CMat& m : mats)
        for (Eigen::Index i = 0; i < m.size(); ++i) {
            f.num(m.data()[i].real());
            f.num(m.data()[i].imag());
        }
    f.bytes(&seed, sizeof seed);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(f.h));
    return buf;
}

namespace {

// below: value must stay <= threshold; otherwise value must stay >= threshold
Check make_check(std::string name, double value, double threshold, bool below,
                 const std::string& digest, int sample) {
    Check c;
    c.name = std::move(name);
    c.value = value;
    c.threshold = threshold;
    c.margin = below ? threshold - value : value - threshold;
    c.pass = std::isfinite(value) && c.margin >= 0.0;
    c.digest = digest;
    c.sample = sample;
    return c;
}

double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), default_tolerances().abs_floor);
}

double spectral_scale(const CMat& h) {
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

struct Context {
    const SuiteOptions& opts;
    double tol;
    CurvatureBounds sbounds;
    BisectionalBounds bbounds;
};

std::vector<Check> invariance_sample(const Context& ctx, int i) {
    const auto& o = ctx.opts;
    const DomainSpec& spec = o.spec;
    CMat z0 = sample_point(spec, derive_seed(o.seed, i, 0));
    CMat z = sample_point(spec, derive_seed(o.seed, i, 1));
    CMat v = sample_tangent(spec, derive_seed(o.seed, i, 2));
    std::string dg = inputs_digest(spec, {z0, z, v}, o.seed);
    Automorphism aut = normalizer(spec, z0);
    CMat w = finsler::apply(aut, z);
    CMat pv = pushforward(aut, z, v);
    double before = metric(spec, z, v).F;
    double after = metric(spec, w, pv).F;
    return {make_check("metric_drift", rel_diff(after, before), ctx.tol, true, dg, i)};
}

std::vector<Check> pseudoconvexity_sample(const Context& ctx, int i) {
    const auto& o = ctx.opts;
    const DomainSpec& spec = o.spec;
    CMat v = sample_tangent(spec, derive_seed(o.seed, i, 0));
    std::string dg = inputs_digest(spec, {v}, o.seed);
    std::vector<Check> out;
    CMat h;
    std::vector<double> predicted;
    if (spec.kind == Kind::IV) {
        HessianIV hv = hessian_IV(v, spec.phi);
        h = hv.H;
        predicted = hv.spectrum.predicted;
    } else {
        h = hessian_origin(spec, v);
    }
    HermitianEigen eig = hermitian_eigen(h);
    out.push_back(make_check("analytic_min_eig_ratio", eig.values(0) / spectral_scale(h), ctx.tol,
                             false, dg, i));
    CMat hfd = fd_vertical_hessian(spec, v, o.fd_step);
    out.push_back(make_check("fd_min_eig_ratio", min_eigenvalue(hfd) / spectral_scale(hfd),
                             ctx.tol, false, dg, i));
    out.push_back(make_check("fd_hessian_agreement", (h - hfd).cwiseAbs().maxCoeff(), 1e-5, true,
                             dg, i));
    if (spec.kind == Kind::IV) {
        double worst = 0.0;
        for (std::size_t a = 0; a < predicted.size(); ++a)
            worst = std::max(worst, std::abs(eig.values(static_cast<Eigen::Index>(a)) - predicted[a]));
        out.push_back(make_check("spectrum_prediction", worst, 1e-9, true, dg, i));
    }
    return out;
}

std::vector<Check> kahler_berwald_sample(const Context& ctx, int i) {
    const auto& o = ctx.opts;
    CMat v = sample_tangent(o.spec, derive_seed(o.seed, i, 0));
    std::string dg = inputs_digest(o.spec, {v}, o.seed);
    return {make_check("mixed_residual", kahler_berwald_residual(o.spec, v, o.fd_step), ctx.tol,
                       true, dg, i)};
}

std::vector<Check> curvature_oracle_sample(const Context& ctx, int i) {
    const auto& o = ctx.opts;
    const DomainSpec& spec = o.spec;
    CMat v = sample_tangent(spec, derive_seed(o.seed, i, 0));
    CMat w = sample_tangent(spec, derive_seed(o.seed, i, 1));
    std::string dg = inputs_digest(spec, {v, w}, o.seed);
    CMat zero = CMat::Zero(spec.rows(), spec.cols());
    double k = sectional(spec, zero, v);
    double b = bisectional(spec, zero, v, w);
    double kfd = fd_sectional_oracle(spec, v, o.fd_step);
    double bfd = fd_bisectional_oracle(spec, v, w, o.fd_step);
    return {make_check("sectional_vs_fd", rel_diff(kfd, k), ctx.tol, true, dg, i),
            make_check("bisectional_vs_fd", rel_diff(bfd, b), ctx.tol, true, dg, i)};
}

std::vector<Check> bounds_sample(const Context& ctx, int i) {
    const auto& o = ctx.opts;
    const DomainSpec& spec = o.spec;
    CMat z = sample_point(spec, derive_seed(o.seed, i, 0));
    CMat v = sample_tangent(spec, derive_seed(o.seed, i, 1));
    CMat w = sample_tangent(spec, derive_seed(o.seed, i, 2));
    std::string dg = inputs_digest(spec, {z, v, w}, o.seed);
    double k = sectional(spec, z, v);
    std::vector<Check> out;
    out.push_back(make_check("sectional_lower", k, ctx.sbounds.lower - ctx.tol, false, dg, i));
    out.push_back(make_check("sectional_upper", k, ctx.sbounds.upper + ctx.tol, true, dg, i));
    out.push_back(make_check("sectional_negative", k, -std::numeric_limits<double>::min(), true, dg, i));
    if (ctx.bbounds.applicable) {
        double b = bisectional(spec, z, v, w);
        out.push_back(make_check("bisectional_nonpositive", b, 1e-10, true, dg, i));
        out.push_back(make_check("bisectional_floor", b, ctx.bbounds.lower - ctx.tol, false, dg, i));
    }
    return out;
}

std::vector<Check> run_sample(const Context& ctx, int i) {
    try {
        switch (ctx.opts.suite) {
        case Suite::Invariance: return invariance_sample(ctx, i);
        case Suite::Pseudoconvexity: return pseudoconvexity_sample(ctx, i);
        case Suite::KahlerBerwald: return kahler_berwald_sample(ctx, i);
        case Suite::CurvatureOracle: return curvature_oracle_sample(ctx, i);
        case Suite::Bounds: return bounds_sample(ctx, i);
        }
    } catch (const Error& e) {
        Check c;
        c.name = std::string("error:") + to_string(e.code());
        c.value = std::numeric_limits<double>::quiet_NaN();
        c.sample = i;
        return {c};
    }
    return {};
}

// Batch-level checks that do not depend on a single sample.
void batch_checks(const Context& ctx, VerificationReport& rep) {
    const auto& o = ctx.opts;
    const DomainSpec& spec = o.spec;
    try {
        switch (o.suite) {
        case Suite::KahlerBerwald: {
            CMat v = sample_tangent(spec, derive_seed(o.seed, 0, 0));
            double r1 = kahler_berwald_residual(spec, v, o.fd_step);
            double r2 = kahler_berwald_residual(spec, v, 0.5 * o.fd_step);
            // Second order: r(h/2) <= r(h)/4 up to slack, unless both sit at the roundoff floor.
            const double floor = 1e-12;
            double value = (r2 <= floor) ? 0.0 : r2 / std::max(r1, floor);
            rep.checks.push_back(make_check("step_halving_ratio", value, 0.5, true,
                                            inputs_digest(spec, {v}, o.seed), -1));
            rep.summary["residual_at_h"] = r1;
            rep.summary["residual_at_half_h"] = r2;
            if (r1 == 0.0 && r2 == 0.0)
                rep.notes.push_back("mixed residual is exactly zero: F^2 is even in the base point, "
                                    "so the central stencil cancels bitwise");
            break;
        }
        case Suite::CurvatureOracle: {
            CMat v = sample_tangent(spec, derive_seed(o.seed, 0, 0));
            CMat zero = CMat::Zero(spec.rows(), spec.cols());
            double k = sectional(spec, zero, v);
            const double h = 1e-3;
            double e1 = std::abs(fd_sectional_oracle(spec, v, h) - k);
            double e2 = std::abs(fd_sectional_oracle(spec, v, 0.5 * h) - k);
            double ratio = e1 / std::max(e2, 1e-300);
            rep.checks.push_back(make_check("richardson_ratio", ratio, 3.0, false,
                                            inputs_digest(spec, {v}, o.seed), -1));
            rep.summary["richardson_error_h"] = e1;
            rep.summary["richardson_error_half_h"] = e2;
            break;
        }
        case Suite::Bounds: {
            CMat zero = CMat::Zero(spec.rows(), spec.cols());
            double kl = sectional(spec, zero, ctx.sbounds.attains_lower);
            double ku = sectional(spec, zero, ctx.sbounds.attains_upper);
            rep.checks.push_back(make_check("attains_lower", std::abs(kl - ctx.sbounds.lower), 1e-10,
                                            true, "", -1));
            rep.checks.push_back(make_check("attains_upper", std::abs(ku - ctx.sbounds.upper), 1e-10,
                                            true, "", -1));
            rep.summary["sectional_lower_bound"] = ctx.sbounds.lower;
            rep.summary["sectional_upper_bound"] = ctx.sbounds.upper;
            if (ctx.bbounds.applicable) {
                rep.summary["bisectional_floor"] = ctx.bbounds.lower;
                if (ctx.bbounds.naive_lower)
                    rep.summary["bisectional_naive_floor"] = *ctx.bbounds.naive_lower;
            }
            if (!ctx.bbounds.note.empty())
                rep.notes.push_back(ctx.bbounds.note);
            break;
        }
        default:
            break;
        }
    } catch (const Error& e) {
        Check c;
        c.name = std::string("error:") + to_string(e.code());
        c.value = std::numeric_limits<double>::quiet_NaN();
        rep.checks.push_back(c);
    }
}

void summarize(VerificationReport& rep) {
    auto key = [](const Check& c) {
        return std::isnan(c.margin) ? -std::numeric_limits<double>::infinity() : c.margin;
    };
    std::map<std::string, const Check*> worst;
    for (const Check& c : rep.checks) {
        if (c.sample < 0)
            continue;
        auto it = worst.find(c.name);
        if (it == worst.end() || key(c) < key(*it->second))
            worst[c.name] = &c;
    }
    for (auto& [name, c] : worst)
        rep.summary["worst_" + name] = c->value;
    rep.summary["failures"] = rep.failures();
}

VerificationReport run(const SuiteOptions& opts, bool parallel) {
    opts.spec.validate();
    opts.spec.validate();
    if (opts.samples < 0)
        fail(ErrorCode::UsageError, "samples must be nonnegative");
    if (!(opts.fd_step >= 1e-6 && opts.fd_step <= 1e-3))
        fail(ErrorCode::UsageError, "fd-step must lie in [1e-6, 1e-3]");
    Context ctx{opts, opts.tol > 0.0 ? opts.tol : default_tolerance(opts.suite), {}, {}};
    if (opts.suite == Suite::Bounds) {
        ctx.sbounds = sectional_bounds(opts.spec);
        ctx.bbounds = bisectional_bounds(opts.spec);
    }

    std::vector<std::vector<Check>> per(static_cast<std::size_t>(opts.samples));
    const int n = opts.samples;
    if (parallel) {
#ifdef _OPENMP
        int threads = opts.jobs > 0 ? opts.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
        for (int i = 0; i < n; ++i)
            per[static_cast<std::size_t>(i)] = run_sample(ctx, i);
    } else {
        for (int i = 0; i < n; ++i)
            per[static_cast<std::size_t>(i)] = run_sample(ctx, i);
    }

    VerificationReport rep;
    rep.suite = to_string(opts.suite);
    rep.spec = opts.spec;
    rep.samples = opts.samples;
    rep.seed = opts.seed;
    for (auto& v : per)
        for (auto& c : v)
            rep.checks.push_back(std::move(c));
    batch_checks(ctx, rep);
    rep.tolerances["suite"] = ctx.tol;
    rep.tolerances["fd_step"] = opts.fd_step;
    rep.tolerances["abs_floor"] = default_tolerances().abs_floor;
    if (opts.suite == Suite::Pseudoconvexity) {
        rep.tolerances["fd_hessian_agreement"] = 1e-5;
        if (opts.spec.kind == Kind::IV)
            rep.tolerances["spectrum_prediction"] = 1e-9;
    }
    if (opts.suite == Suite::Bounds)
        rep.tolerances["bisectional_nonpositive"] = 1e-10;
    summarize(rep);
    return rep;
}

} // namespace

VerificationReport run_suite(const SuiteOptions& opts) { return run(opts, true); }

VerificationReport run_suite_serial(const SuiteOptions& opts) { return run(opts, false); }

} // namespace finsler
