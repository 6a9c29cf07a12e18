// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "finsler/automorphisms.hpp"
#include "finsler/metrics.hpp"
#include "oracles.hpp"

using namespace finsler;

namespace {

std::vector<DomainSpec> specs() {
    return {make_I(2, 3), make_I(3, 3), make_II(3), make_III(4), make_III(5), make_IV(5)};
}

double rel_err(const CMat& a, const CMat& b) {
    return (a - b).norm() / std::max(b.norm(), 1e-300);
}

// d/dε apply(Z + εV) at ε = 0 by a fourth-order central difference
CMat fd_pushforward(const Automorphism& aut, const CMat& z, const CMat& v, double h = 1e-4) {
    auto f = [&](double e) { return finsler::apply(aut, z + e * v); };
    return (-f(2 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2 * h)) / (12.0 * h);
}

} // namespace

TEST_CASE("normalizer at the origin is the identity (kind I)") {
    DomainSpec s = make_I(2, 3);
    Automorphism aut = normalizer(s, CMat::Zero(2, 3));
    CHECK((aut.a - CMat::Identity(2, 2)).norm() == 0.0);
    CHECK((aut.d - CMat::Identity(3, 3)).norm() == 0.0);
    std::mt19937_64 rng(41);
    CMat z = oracle::point(s, 0.7, rng);
    CHECK((finsler::apply(aut, z) - z).norm() < 1e-15);
}

TEST_CASE("factor invariants") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        {
            DomainSpec s = make_I(2, 3);
            CMat z0 = oracle::point(s, 0.9, rng);
            Automorphism aut = normalizer(s, z0);
            CMat gm = CMat::Identity(2, 2) - z0 * z0.adjoint();
            CMat gn = CMat::Identity(3, 3) - z0.adjoint() * z0;
            CHECK(rel_err(aut.a.adjoint() * aut.a, gm.inverse()) < 1e-10);
            CHECK(rel_err(aut.d.adjoint() * aut.d, gn.inverse()) < 1e-10);
        }
        {
            DomainSpec s = make_II(3);
            CMat z0 = oracle::point(s, 0.9, rng);
            Automorphism aut = normalizer(s, z0);
            CMat g = CMat::Identity(3, 3) - z0 * z0.conjugate();
            CHECK(rel_err(aut.a.adjoint() * aut.a, g.inverse()) < 1e-10);
        }
        {
            DomainSpec s = make_III(4);
            CMat z0 = oracle::point(s, 0.9, rng);
            Automorphism aut = normalizer(s, z0);
            CMat g = CMat::Identity(4, 4) + z0 * z0.conjugate();
            CHECK(rel_err(aut.a.adjoint() * aut.a, g.inverse()) < 1e-10);
        }
        {
            DomainSpec s = make_IV(5);
            CMat z0 = sample_point(s, static_cast<std::uint64_t>(trial));
            Automorphism aut = normalizer(s, z0);
            RMat g2 = RMat::Identity(2, 2) - aut.x0 * aut.x0.transpose();
            RMat gn = RMat::Identity(5, 5) - aut.x0.transpose() * aut.x0;
            RMat aa = aut.ar * aut.ar.transpose();
            RMat dd = aut.dr * aut.dr.transpose();
            CHECK((aa - g2.inverse()).norm() / g2.inverse().norm() < 1e-10);
            CHECK((dd - gn.inverse()).norm() / gn.inverse().norm() < 1e-10);
            CHECK(aut.ar.determinant() > 0.0);
        }
    }
}

TEST_CASE("kind IV example: X0 for z0 = (0.3, 0, 0, 0, 0)") {
    CMat z0 = CMat::Zero(1, 5);
    z0(0, 0) = 0.3;
    Automorphism aut = normalizer(make_IV(5), z0);
    Eigen::SelfAdjointEigenSolver<RMat> es(RMat::Identity(2, 2) - aut.x0 * aut.x0.transpose());
    CHECK(es.eigenvalues().minCoeff() > 0.0);
    CHECK(finsler::apply(aut, z0).norm() < 1e-12);
}

TEST_CASE("kind IV at the origin is the identity map") {
    std::mt19937_64 rng(43);
    DomainSpec s = make_IV(5);
    Automorphism aut = normalizer(s, CMat::Zero(1, 5));
    for (int trial = 0; trial < 20; ++trial) {
        CMat z = oracle::point(s, 0.5, rng);
        CMat w = finsler::apply(aut, z);
        CHECK(std::abs(w.norm() - z.norm()) < 1e-14);
    }
}

TEST_CASE("normalization and membership preservation") {
    for (const auto& s : specs()) {
        for (std::uint64_t i = 0; i < 200; ++i) {
            CMat z0 = sample_point(s, derive_seed(7, i, 0));
            Automorphism aut = normalizer(s, z0);
            CHECK(finsler::apply(aut, z0).norm() < 1e-10);
            CMat z = sample_point(s, derive_seed(7, i, 1));
            CMat w = finsler::apply(aut, z);
            CHECK(contains(s, w).inside);
        }
    }
}

TEST_CASE("normalizer errors") {
    DomainSpec s = make_I(2, 2);
    CMat out = CMat::Identity(2, 2) * 1.1;
    try {
        normalizer(s, out);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotInDomain);
    }
    CMat edge = CMat::Identity(2, 2) * (1.0 - 1e-10);
    try {
        normalizer(s, edge);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NumericalBreakdown);
    }
}

TEST_CASE("differential agrees with difference quotients of apply") {
    for (const auto& s : specs()) {
        for (std::uint64_t i = 0; i < 20; ++i) {
            CMat z0 = sample_point(s, derive_seed(8, i, 0));
            CMat v = sample_tangent(s, derive_seed(8, i, 1));
            Automorphism aut = normalizer(s, z0);
            CHECK(rel_err(differential(aut, v), fd_pushforward(aut, z0, v)) < 1e-6);
            CMat z = sample_point(s, derive_seed(8, i, 2));
            CHECK(rel_err(pushforward(aut, z, v), fd_pushforward(aut, z, v)) < 1e-6);
        }
    }
}

TEST_CASE("differential keeps the symmetry class") {
    std::mt19937_64 rng(44);
    DomainSpec s2 = make_II(3);
    DomainSpec s3 = make_III(5);
    for (int trial = 0; trial < 20; ++trial) {
        CMat w2 = differential(normalizer(s2, oracle::point(s2, 0.8, rng)), oracle::tangent(s2, rng));
        CHECK((w2 - w2.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        CMat w3 = differential(normalizer(s3, oracle::point(s3, 0.8, rng)), oracle::tangent(s3, rng));
        CHECK((w3 + w3.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
    CMat bad = CMat::Zero(3, 3);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(differential(normalizer(s2, CMat::Zero(3, 3)), bad), Error);
}

TEST_CASE("Kronecker forms of the differential") {
    std::mt19937_64 rng(45);
    SUBCASE("kind I: v·(A′ ⊗ D̄′)") {
        DomainSpec s = make_I(2, 2);
        for (int trial = 0; trial < 50; ++trial) {
            Automorphism aut = normalizer(s, oracle::point(s, 0.8, rng));
            CMat at = aut.a.transpose(), dc = aut.d.adjoint();
            CMat k(4, 4);
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j)
                            k(2 * a + b, 2 * i + j) = at(a, i) * dc(b, j);
            CHECK((kronecker_differential(s, aut) - k).norm() < 1e-12 * k.norm());
            CMat v = oracle::tangent(s, rng);
            FlatteningChart c(s);
            CVec lhs = c.flatten(differential(aut, v));
            CVec rhs = (c.flatten(v).transpose() * k).transpose();
            CHECK((lhs - rhs).norm() < 1e-11);
        }
    }
    SUBCASE("kinds II and III: weighted symmetric and skew products") {
        for (auto s : {make_II(3), make_III(4), make_III(5)}) {
            FlatteningChart c(s);
            const int d = c.dim();
            for (int trial = 0; trial < 20; ++trial) {
                Automorphism aut = normalizer(s, oracle::point(s, 0.8, rng));
                const CMat& A = aut.a;
                // chart weight: flattened coordinate = w(i,j)·Z_ij
                auto wgt = [&](int i, int j) { return (s.kind == Kind::II && i != j) ? std::sqrt(2.0) : 1.0; };
                CMat k(d, d);
                for (int r = 0; r < d; ++r)
                    for (int col = 0; col < d; ++col) {
                        auto [a, b] = c.slot(r);
                        auto [i, j] = c.slot(col);
                        cplx term = s.kind == Kind::II ? A(i, a) * A(j, b) + A(i, b) * A(j, a)
                                                       : A(i, a) * A(j, b) - A(i, b) * A(j, a);
                        if (a == b)
                            term *= 0.5;
                        k(r, col) = term * wgt(i, j) / wgt(a, b);
                    }
                CHECK((kronecker_differential(s, aut) - k).norm() < 1e-11 * k.norm());
                CMat v = oracle::tangent(s, rng);
                CVec lhs = c.flatten(differential(aut, v));
                CVec rhs = (c.flatten(v).transpose() * k).transpose();
                CHECK((lhs - rhs).norm() < 1e-11);
            }
        }
    }
    SUBCASE("kind IV: v·J") {
        DomainSpec s = make_IV(5);
        for (std::uint64_t i = 0; i < 20; ++i) {
            Automorphism aut = normalizer(s, sample_point(s, i));
            CMat v = sample_tangent(s, i + 100);
            CHECK(rel_err(differential(aut, v), v * kronecker_differential(s, aut)) < 1e-13);
        }
    }
}

TEST_CASE("tensor helpers on small inputs") {
    CMat a(2, 2), b(2, 2);
    a << 1.0, 2.0, 3.0, 4.0;
    b << 0.0, 1.0, 1.0, 0.0;
    CMat k = kron(a, b);
    CHECK(k(0, 1) == cplx(1.0));
    CHECK(k(3, 2) == cplx(4.0));
    CHECK(skew_tensor(CMat::Identity(3, 3)).isApprox(CMat::Identity(3, 3)));
}

TEST_CASE("r̃ and s̃: examples and dual paths") {
    DomainSpec s = make_IV(5);
    CMat e1 = CMat::Zero(1, 5);
    e1(0, 0) = 1.0;
    NormalizedIV o = r_s_tilde(s, CMat::Zero(1, 5), e1);
    CHECK(o.r_tilde == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(o.s_tilde == doctest::Approx(1.0).epsilon(1e-15));
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 30; ++trial) {
        CMat v = oracle::gaussian(1, 5, rng);
        NormalizedIV at0 = r_s_tilde_closed(s, CMat::Zero(1, 5), v);
        CHECK(oracle::rel(at0.r_tilde, 10.0 * v.squaredNorm()) < 1e-14);
        double ss = std::norm((v * v.transpose())(0, 0)) / std::pow(v.squaredNorm(), 2);
        CHECK(std::abs(at0.s_tilde - ss) < 1e-14);
    }
    for (std::uint64_t i = 0; i < 200; ++i) {
        CMat z = sample_point(s, derive_seed(9, i, 0));
        CMat v = sample_tangent(s, derive_seed(9, i, 1));
        NormalizedIV p1 = r_s_tilde(s, z, v);
        NormalizedIV p2 = r_s_tilde_closed(s, z, v);
        CHECK(oracle::rel(p2.r_tilde, p1.r_tilde) < 1e-9);
        CHECK(std::abs(p2.s_tilde - p1.s_tilde) < 1e-9);
        CHECK(p1.s_tilde <= 1.0 + 1e-12);
        CHECK(p1.r_tilde > 0.0);
    }
    CHECK_THROWS_AS(r_s_tilde(s, CMat::Zero(1, 5), CMat::Zero(1, 5)), Error);
}

TEST_CASE("delta_IV") {
    CMat z = CMat::Zero(1, 5);
    z(0, 0) = 0.5;
    CHECK(delta_IV(z) == doctest::Approx(0.5625).epsilon(1e-15));
}

TEST_CASE("the q = 4 entry permutation preserves the domain and the norm") {
    std::mt19937_64 rng(47);
    DomainSpec s = make_III(4, 1.0, 2);
    CMat zero = CMat::Zero(4, 4);
    for (int trial = 0; trial < 100; ++trial) {
        CMat v = oracle::tangent(s, rng);
        CMat pv = permute_q4(v);
        CHECK((pv + pv.transpose()).norm() == 0.0);
        CHECK(oracle::rel(metric(s, zero, pv).F, metric(s, zero, v).F) < 1e-12);
        CMat z = oracle::point(s, 0.9, rng);
        CHECK(std::abs(contains(s, permute_q4(z)).margin - contains(s, z).margin) < 1e-12);
    }
    CHECK_THROWS_AS(permute_q4(CMat::Zero(3, 3)), Error);
}
