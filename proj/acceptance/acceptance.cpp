// SPDX-License-Identifier: MIT
// Acceptance checks: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "finsler/automorphisms.hpp"
#include "finsler/curvature.hpp"
#include "finsler/metrics.hpp"
#include "finsler/norms.hpp"
#include "finsler/verify.hpp"

using namespace finsler;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail, double seconds) {
    std::printf("%s criterion %d: %s | %s | %.2fs\n", pass ? "PASS" : "FAIL", id, title.c_str(),
                detail.c_str(), seconds);
    if (!pass)
        ++failures;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

CMat unit(int r, int c, int i, int j) {
    CMat e = CMat::Zero(r, c);
    e(i, j) = 1.0;
    return e;
}

CMat block_sum(int q, int blocks) {
    CMat v = CMat::Zero(q, q);
    for (int b = 0; b < blocks; ++b) {
        v(2 * b, 2 * b + 1) = 1.0;
        v(2 * b + 1, 2 * b) = -1.0;
    }
    return v;
}

CMat gaussian(int r, int c, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    CMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m(i, j) = cplx(nd(rng), nd(rng));
    return m;
}

CMat haar_unitary(int n, std::mt19937_64& rng) {
    Eigen::HouseholderQR<CMat> qr(gaussian(n, n, rng));
    CMat q = qr.householderQ();
    CMat r = qr.matrixQR();
    for (int i = 0; i < n; ++i)
        q.col(i) *= std::polar(1.0, std::arg(r(i, i)));
    return q;
}

RMat haar_orthogonal(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    RMat g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g(i, j) = nd(rng);
    Eigen::HouseholderQR<RMat> qr(g);
    RMat q = qr.householderQ();
    RMat r = qr.matrixQR();
    for (int i = 0; i < n; ++i)
        if (r(i, i) < 0.0)
            q.col(i) *= -1.0;
    return q;
}

/// Sectional curvature at the origin from the eigenvalues μ of VV̄′.
double eig_sectional(const DomainSpec& s, const CMat& v) {
    Eigen::SelfAdjointEigenSolver<CMat> es(v * v.adjoint());
    double p1 = 0.0, p2 = 0.0, pk = 0.0, pk1 = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double mu = std::max(0.0, es.eigenvalues()(i));
        p1 += mu;
        p2 += mu * mu;
        pk += std::pow(mu, s.k);
        pk1 += std::pow(mu, s.k + 1);
    }
    double c = s.scale(), t = s.t;
    double f2 = c / (1.0 + t) * (p1 + t * std::pow(pk, 1.0 / s.k));
    double num = p2 + t * std::pow(pk, 1.0 / s.k - 1.0) * pk1;
    return -4.0 * c / (1.0 + t) * num / (f2 * f2);
}

/// N times the Levi form of −log Δ along v: the Bergman metric of the Lie ball.
double lie_ball_bergman(int N, const CMat& z, const CMat& v) {
    cplx a = (z * z.transpose())(0, 0);
    cplx zv = (z * v.transpose())(0, 0);
    double delta = 1.0 + std::norm(a) - 2.0 * z.squaredNorm();
    cplx d1 = 2.0 * zv * std::conj(a) - 2.0 * (v * z.adjoint())(0, 0);
    double d11 = 4.0 * std::norm(zv) - 2.0 * v.squaredNorm();
    return -N * (delta * d11 - std::norm(d1)) / (delta * delta);
}

VerificationReport suite(Suite which, const DomainSpec& spec, int samples, double& worst,
                         const std::string& key) {
    SuiteOptions o;
    o.suite = which;
    o.spec = spec;
    o.samples = samples;
    o.seed = 42;
    VerificationReport r = run_suite(o);
    auto it = r.summary.find(key);
    if (it != r.summary.end() && std::isfinite(it->second))
        worst = std::max(worst, std::abs(it->second));
    return r;
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    double err = 0.0;
    CMat z23 = CMat::Zero(2, 3);
    DomainSpec i = make_I(2, 3, 1.0, 2);
    err = std::max(err, std::abs(sectional(i, z23, unit(2, 3, 0, 0)) + 0.8));
    err = std::max(err, std::abs(sectional(i, z23, unit(2, 3, 0, 0) + unit(2, 3, 1, 1)) +
                                 0.8 * 2.0 / (2.0 + std::sqrt(2.0))));
    for (double t : {0.0, 1.0, 2.5}) {
        int p = 3;
        DomainSpec ii = make_II(p, t, 2);
        CMat z = CMat::Zero(p, p);
        err = std::max(err, std::abs(sectional(ii, z, unit(p, p, 0, 0)) + 4.0 / (p + 1)));
        err = std::max(err, std::abs(sectional(ii, z, CMat::Identity(p, p)) +
                                     4.0 / (p + 1) * (1.0 + t) / (p + t * std::sqrt(p))));
    }
    for (int q : {4, 5}) {
        DomainSpec iii = make_III(q, 1.0, 2);
        CMat z = CMat::Zero(q, q);
        CurvatureBounds b = sectional_bounds(iii);
        for (const CMat& v : {block_sum(q, 1), block_sum(q, q / 2)}) {
            double k = sectional(iii, z, v);
            err = std::max(err, std::abs(k - eig_sectional(iii, v)));
        }
        err = std::max(err, std::abs(sectional(iii, z, block_sum(q, 1)) - b.lower));
        err = std::max(err, std::abs(sectional(iii, z, block_sum(q, q / 2)) - b.upper));
    }
    report(1, "extremal sectional values", err < 1e-12, fmt("max abs error %.2e", err),
           seconds_since(t0));
}

std::vector<DomainSpec> four_kinds(double t, int k) {
    return {make_I(2, 3, t, k), make_II(3, t, k), make_III(4, t, k), make_III(5, t, k)};
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    auto specs = four_kinds(1.0, 2);
    for (const auto& phi : {bergman_profile(), kobayashi_profile(), paper_example_profile()})
        specs.push_back(make_IV(5, phi));
    double worst = 0.0;
    bool pass = true;
    for (const auto& s : specs)
        pass &= suite(Suite::Invariance, s, 200, worst, "worst_metric_drift").all_pass();
    double secs = seconds_since(t0);
    report(2, "invariance under (Phi, Phi_*)", pass && worst < 1e-8 && secs < 10.0,
           fmt("7 specs x 200 samples, max drift %.2e", worst), secs);
}

void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    auto specs = four_kinds(1.0, 2);
    specs.push_back(make_IV(5, paper_example_profile()));
    specs.push_back(make_IV(5, exp_family_profile(0.1, 2)));
    double worst = 0.0;
    bool pass = true;
    int checks = 0;
    for (const auto& s : specs) {
        VerificationReport r = suite(Suite::Pseudoconvexity, s, 100, worst, "worst_spectrum_prediction");
        pass &= r.all_pass();
        checks += static_cast<int>(r.checks.size());
    }
    report(3, "strong pseudoconvexity", pass,
           fmt("6 specs x 100 samples, %.0f checks, worst IV spectrum error %.2e", checks, worst),
           seconds_since(t0));
    double unused = 0.0;
    VerificationReport kob = suite(Suite::Pseudoconvexity, make_IV(5, kobayashi_profile()), 100,
                                   unused, "");
    std::printf("NOTE criterion 3: kobayashi profile has k~ = 0 identically, %d of %zu checks fail "
                "(degenerate Hessian, not strongly pseudoconvex)\n",
                kob.failures(), kob.checks.size());
}

void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    auto specs = four_kinds(1.0, 3);
    specs.push_back(make_IV(5, paper_example_profile()));
    double worst = 0.0, h = 0.0, h2 = 0.0;
    bool pass = true;
    for (const auto& s : specs) {
        VerificationReport r = suite(Suite::KahlerBerwald, s, 50, worst, "worst_mixed_residual");
        pass &= r.all_pass();
        h = std::max(h, r.summary.at("residual_at_h"));
        h2 = std::max(h2, r.summary.at("residual_at_half_h"));
    }
    std::string detail = fmt("5 specs x 50 samples, max residual %.2e (h) %.2e (h/2)", worst, h2);
    if (h == 0.0 && h2 == 0.0)
        detail += "; residual is exactly 0 at both steps, so halving is trivially non-increasing";
    report(4, "Kahler-Berwald criterion", pass && worst < 1e-5 && h2 <= h, detail, seconds_since(t0));
}

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    auto specs = four_kinds(1.0, 2);
    specs.push_back(make_IV(5, paper_example_profile()));
    specs.push_back(make_IV(5, bergman_profile()));
    double wk = 0.0, wb = 0.0;
    bool pass = true;
    for (const auto& s : specs) {
        VerificationReport r = suite(Suite::CurvatureOracle, s, 50, wk, "worst_sectional_vs_fd");
        pass &= r.all_pass();
        if (auto it = r.summary.find("worst_bisectional_vs_fd"); it != r.summary.end())
            wb = std::max(wb, it->second);
    }
    double secs = seconds_since(t0);
    report(5, "curvature vs finite-difference oracle", pass && secs < 60.0,
           fmt("6 specs x 50 samples, max rel gap %.2e (K) %.2e (B)", wk, wb), secs);
}

void criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<DomainSpec> specs = {make_I(2, 3, 1.0, 2), make_I(3, 3, 0.5, 3), make_II(3, 1.0, 2),
                                     make_II(4, 2.0, 3), make_III(4, 1.0, 2), make_III(5, 2.0, 3),
                                     make_IV(5), make_IV(5, paper_example_profile()),
                                     make_IV(6, exp_family_profile(0.1, 2)),
                                     make_IV(5, kobayashi_profile())};
    bool pass = true;
    int checks = 0;
    for (const auto& s : specs) {
        double unused = 0.0;
        VerificationReport r = suite(Suite::Bounds, s, 500, unused, "");
        pass &= r.all_pass();
        checks += static_cast<int>(r.checks.size());
    }
    report(6, "pinching and sign", pass,
           fmt("10 specs x 500 samples, %.0f checks (kobayashi: sectional only)", checks),
           seconds_since(t0));
}

void criterion7() {
    auto t0 = std::chrono::steady_clock::now();
    double err = 0.0;
    for (const auto& s : four_kinds(0.0, 2)) {
        for (std::uint64_t i = 0; i < 100; ++i) {
            CMat z = sample_point(s, derive_seed(7, i, 0));
            CMat v = sample_tangent(s, derive_seed(7, i, 1));
            CMat l = (CMat::Identity(s.rows(), s.rows()) - z * z.adjoint()).partialPivLu().solve(v);
            CMat r = (CMat::Identity(s.cols(), s.cols()) - z.adjoint() * z).partialPivLu().solve(v.adjoint());
            err = std::max(err, rel(metric(s, z, v).F_squared, s.scale() * (l * r).trace().real()));
            err = std::max(err, rel(sectional(s, CMat::Zero(s.rows(), s.cols()), v), eig_sectional(s, v)));
        }
    }
    for (int N : {5, 6}) {
        DomainSpec s = make_IV(N);
        for (std::uint64_t i = 0; i < 100; ++i) {
            CMat z = sample_point(s, derive_seed(7, i, 2));
            CMat v = sample_tangent(s, derive_seed(7, i, 3));
            err = std::max(err, rel(metric(s, z, v).F_squared, lie_ball_bergman(N, z, v)));
            double st = std::norm((v * v.transpose())(0, 0)) / std::pow(v.squaredNorm(), 2);
            err = std::max(err, rel(sectional(s, CMat::Zero(1, N), v), -(2.0 / N) * (2.0 - st)));
        }
    }
    double para0 = 0.0, para1 = 1e300;
    for (auto [s0, s1] : {std::pair{make_I(2, 3, 0.0, 2), make_I(2, 3, 1.0, 2)},
                          std::pair{make_II(3, 0.0, 2), make_II(3, 1.0, 2)}}) {
        CMat zero = CMat::Zero(s0.rows(), s0.cols());
        CMat v = unit(s0.rows(), s0.cols(), 0, 0), w = unit(s0.rows(), s0.cols(), 1, 1);
        auto defect = [&](const DomainSpec& s) {
            auto f2 = [&](const CMat& x) { return metric(s, zero, x).F_squared; };
            return std::abs(f2(v + w) + f2(v - w) - 2.0 * f2(v) - 2.0 * f2(w));
        };
        para0 = std::max(para0, defect(s0));
        para1 = std::min(para1, defect(s1));
    }
    report(7, "Bergman collapse and parallelogram law", err < 1e-12 && para0 < 1e-12 && para1 > 1e-6,
           fmt("max rel error %.2e, parallelogram defect %.2e (t=0) %.3f (t=1)", err, para0, para1),
           seconds_since(t0));
}

void criterion8() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(8);
    double err = 0.0;
    for (int i = 0; i < 100; ++i) {
        CMat xi = gaussian(1, 5, rng);
        double r = xi.squaredNorm();
        double a2 = std::norm((xi * xi.transpose())(0, 0));
        double ck = std::sqrt(r + std::sqrt(r * r - a2));
        err = std::max(err, rel(f_IV_norm(xi, kobayashi_profile()).value, ck));
    }
    report(8, "Kobayashi coincidence on the Lie ball", err < 1e-12, fmt("100 samples, max rel error %.2e", err),
           seconds_since(t0));
}

void criterion9() {
    auto t0 = std::chrono::steady_clock::now();
    double err = 0.0;
    int inputs = 0;
    for (const auto& s : {make_I(2, 3, 1.0, 3), make_II(3, 1.0, 2), make_III(4, 1.0, 4), make_III(5, 1.0, 2)}) {
        CMat zero = CMat::Zero(s.rows(), s.cols());
        for (std::uint64_t i = 0; i < 50; ++i, ++inputs) {
            CMat z = sample_point(s, derive_seed(9, i, 0));
            CMat v = sample_tangent(s, derive_seed(9, i, 1)), w = sample_tangent(s, derive_seed(9, i, 2));
            Automorphism aut = normalizer(s, z);
            CMat pv = differential(aut, v), pw = differential(aut, w);
            for (int l : {1, 2, 3, s.k, s.k + 1})
                err = std::max(err, rel(frak_B(l, z, v), frak_B(l, zero, pv)));
            for (auto [a, b] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{1, s.k}})
                err = std::max(err, rel(cal_B(a, b, z, v, w), cal_B(a, b, zero, pv, pw)));
        }
    }
    report(9, "transport identities for the building blocks", err < 1e-9,
           fmt("%.0f inputs, max rel error %.2e", inputs, err), seconds_since(t0));
}

void criterion10() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    double err = 0.0;
    for (int i = 0; i < 500; ++i) {
        CMat v = gaussian(2, 3, rng);
        err = std::max(err, rel(minkowski_f(haar_unitary(2, rng) * v * haar_unitary(3, rng), 1.0, 2),
                                minkowski_f(v, 1.0, 2)));
        CMat sq = gaussian(3, 3, rng);
        err = std::max(err, rel(minkowski_f(sq.transpose(), 1.5, 3), minkowski_f(sq, 1.5, 3)));
        DomainSpec ii = make_II(3, 1.0, 2);
        CMat sym = sample_tangent(ii, static_cast<std::uint64_t>(i));
        CMat u = haar_unitary(3, rng);
        CMat z3 = CMat::Zero(3, 3);
        err = std::max(err, rel(metric(ii, z3, u * sym * u.transpose()).F, metric(ii, z3, sym).F));
        DomainSpec iii = make_III(4, 1.0, 2);
        CMat skew = sample_tangent(iii, static_cast<std::uint64_t>(i));
        CMat u4 = haar_unitary(4, rng);
        CMat z4 = CMat::Zero(4, 4);
        double f = metric(iii, z4, skew).F;
        err = std::max(err, rel(metric(iii, z4, u4 * skew * u4.transpose()).F, f));
        err = std::max(err, rel(metric(iii, z4, permute_q4(skew)).F, f));
        CMat xi = gaussian(1, 5, rng);
        CMat moved = std::polar(1.0, angle(rng)) * xi * haar_orthogonal(5, rng).cast<cplx>();
        for (const auto& phi : {paper_example_profile(), exp_family_profile(0.1, 2)})
            err = std::max(err, rel(f_IV_norm(moved, phi).value, f_IV_norm(xi, phi).value));
    }
    report(10, "unitary and isotropy invariance of the origin norms", err < 1e-10,
           fmt("500 group elements per action, max drift %.2e", err), seconds_since(t0));
}

} // namespace

int main() {
    const std::vector<std::function<void()>> criteria = {criterion1, criterion2, criterion3, criterion4,
                                                         criterion5, criterion6, criterion7, criterion8,
                                                         criterion9, criterion10};
    for (const auto& c : criteria) {
        try {
            c();
        } catch (const std::exception& e) {
            std::printf("FAIL criterion: exception %s\n", e.what());
            ++failures;
        }
    }
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
