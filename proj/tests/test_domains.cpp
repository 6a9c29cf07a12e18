// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "finsler/domains.hpp"
#include "oracles.hpp"

using namespace finsler;

namespace {

std::vector<DomainSpec> all_specs() {
    return {make_I(2, 3), make_I(3, 3), make_II(3), make_III(4), make_III(5), make_IV(5)};
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::UsageError;
}

} // namespace

TEST_CASE("spec validation") {
    CHECK_NOTHROW(make_I(2, 3).validate());
    CHECK(code_of([] { make_I(3, 2).validate(); }) == ErrorCode::BadParams);
    CHECK(code_of([] { make_II(1).validate(); }) == ErrorCode::BadParams);
    CHECK(code_of([] { make_III(3).validate(); }) == ErrorCode::BadParams);
    CHECK(code_of([] { make_IV(4).validate(); }) == ErrorCode::BadParams);
    CHECK(code_of([] { make_I(2, 2, -1.0).validate(); }) == ErrorCode::BadParams);
    CHECK(code_of([] { make_I(2, 2, 1.0, 1).validate(); }) == ErrorCode::BadParams);
    DomainSpec small = make_III(3);
    small.relaxed = true;
    CHECK_NOTHROW(small.validate());
    DomainSpec iv = make_IV(3);
    iv.relaxed = true;
    CHECK_NOTHROW(iv.validate());
    CHECK(make_II(3).dim() == 6);
    CHECK(make_III(5).dim() == 10);
    CHECK(make_I(2, 3).label() == "I(2,3)");
}

TEST_CASE("origin is inside every domain") {
    for (const auto& s : all_specs()) {
        Membership m = contains(s, CMat::Zero(s.rows(), s.cols()));
        CHECK(m.inside);
        CHECK(m.margin == doctest::Approx(1.0));
    }
}

TEST_CASE("membership examples") {
    CMat b = CMat::Zero(2, 2);
    b(0, 0) = 1.0;
    CHECK_FALSE(contains(make_I(2, 2), b).inside);
    CMat z = CMat::Zero(1, 5);
    z(0, 0) = 0.5;
    Membership m = contains(make_IV(5), z);
    CHECK(m.inside);
    // slacks 1 + 0.0625 − 0.5 and 1 − 0.25
    CHECK(m.margin == doctest::Approx(std::min(0.5625, 0.75)).epsilon(1e-15));
    CMat far = CMat::Zero(1, 5);
    far(0, 0) = 1.0;
    CHECK_FALSE(contains(make_IV(5), far).inside);
}

TEST_CASE("kind III membership uses I + ZZ̄") {
    // Z = x(E12 − E21) has singular values |x|, |x|
    DomainSpec s = make_III(4);
    CMat z = CMat::Zero(4, 4);
    z(0, 1) = 0.9;
    z(1, 0) = -0.9;
    Membership m = contains(s, z);
    CHECK(m.inside);
    CHECK(m.margin == doctest::Approx(1.0 - 0.81).epsilon(1e-14));
}

TEST_CASE("shape and symmetry errors") {
    CHECK(code_of([] { check_shape(make_I(2, 3), CMat::Zero(3, 2)); }) == ErrorCode::ShapeMismatch);
    CMat ns = CMat::Zero(3, 3);
    ns(0, 1) = 0.1;
    CHECK(code_of([&] { contains(make_II(3), ns); }) == ErrorCode::SymmetryViolation);
    CHECK(code_of([&] { contains(make_III(4), CMat::Identity(4, 4) * 0.1); }) ==
          ErrorCode::SymmetryViolation);
}

TEST_CASE("sample_point: membership, margin, determinism") {
    for (const auto& s : all_specs()) {
        for (std::uint64_t seed = 0; seed < 1000; ++seed) {
            CMat z = sample_point(s, seed);
            Membership m = contains(s, z);
            REQUIRE(m.inside);
            CHECK(m.margin > 1e-6);
        }
        CHECK((sample_point(s, 5) - sample_point(s, 5)).norm() == 0.0);
        CHECK((sample_point(s, 5) - sample_point(s, 6)).norm() > 0.0);
    }
}

TEST_CASE("sample_point kind II is symmetric; kind I stays inside the unit ball") {
    CMat z = sample_point(make_II(3), 7);
    CHECK((z - z.transpose()).cwiseAbs().maxCoeff() < 1e-15);
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        Eigen::JacobiSVD<CMat> svd(sample_point(make_I(2, 3), seed));
        worst = std::max(worst, svd.singularValues()(0));
    }
    CHECK(worst < 1.0);
}

TEST_CASE("sample_tangent: class, norm, determinism") {
    CMat v = sample_tangent(make_III(4), 3);
    CHECK((v + v.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CMat w = sample_tangent(make_IV(5), 3);
    CHECK(w.rows() == 1);
    CHECK(w.cols() == 5);
    CHECK(std::abs(w.norm() - 1.0) < 1e-14);
    CHECK((sample_tangent(make_I(2, 3), 1) - sample_tangent(make_I(2, 3), 1)).norm() == 0.0);
    CHECK((sample_tangent(make_I(2, 3), 1) - sample_tangent(make_I(2, 3), 2)).norm() > 0.0);
    CMat s = sample_tangent(make_II(4), 9);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("derive_seed separates streams and indices") {
    CHECK(derive_seed(42, 0, 0) != derive_seed(42, 0, 1));
    CHECK(derive_seed(42, 0, 0) != derive_seed(42, 1, 0));
    CHECK(derive_seed(42, 3, 1) == derive_seed(42, 3, 1));
}

TEST_CASE("membership is invariant under isotropy actions") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        DomainSpec s1 = make_I(2, 3);
        CMat z = oracle::point(s1, 0.95, rng);
        double m0 = contains(s1, z).margin;
        CMat a = oracle::unitary(2, rng), b = oracle::unitary(3, rng);
        CHECK(std::abs(contains(s1, a * z * b.adjoint()).margin - m0) < 1e-12);

        DomainSpec s2 = make_II(3);
        CMat z2 = oracle::point(s2, 0.95, rng);
        CMat u = oracle::unitary(3, rng);
        CHECK(std::abs(contains(s2, symmetrize(s2, u * z2 * u.transpose())).margin -
                       contains(s2, z2).margin) < 1e-12);

        DomainSpec s3 = make_III(4);
        CMat z3 = oracle::point(s3, 0.95, rng);
        CMat u4 = oracle::unitary(4, rng);
        CHECK(std::abs(contains(s3, symmetrize(s3, u4 * z3 * u4.transpose())).margin -
                       contains(s3, z3).margin) < 1e-12);

        DomainSpec s4 = make_IV(5);
        CMat z4 = oracle::point(s4, 0.6, rng);
        RMat d = oracle::orthogonal(5, rng);
        double theta = 2.0 * M_PI * (trial / 100.0);
        CMat w4 = std::polar(1.0, theta) * z4 * d.cast<cplx>();
        CHECK(std::abs(contains(s4, w4).margin - contains(s4, z4).margin) < 1e-12);
    }
}

TEST_CASE("flatten examples") {
    FlatteningChart c2(make_II(2));
    CMat z(2, 2);
    z << 1.0, 2.0, 2.0, 3.0;
    CVec x = c2.flatten(z);
    REQUIRE(x.size() == 3);
    CHECK(std::abs(x(0) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(x(1) - cplx(2.0 * std::sqrt(2.0))) < 1e-15);
    CHECK(std::abs(x(2) - cplx(3.0)) < 1e-15);

    FlatteningChart c3(make_III(4));
    CMat v = CMat::Zero(4, 4);
    v(0, 1) = 1.0;
    v(1, 0) = -1.0;
    CVec y = c3.flatten(v);
    CHECK(y.size() == 6);
    CHECK(y(0) == cplx(1.0));
    CHECK(y.tail(5).norm() == 0.0);
    CHECK(c3.slot(0) == std::pair<int, int>(0, 1));
}

TEST_CASE("flatten round trips") {
    std::mt19937_64 rng(22);
    for (auto s : {make_I(2, 3), make_III(4), make_IV(5)}) {
        FlatteningChart c(s);
        for (int trial = 0; trial < 100; ++trial) {
            CMat v = oracle::tangent(s, rng);
            CHECK((c.unflatten(c.flatten(v)) - v).norm() == 0.0);
        }
    }
    // kind II divides by √2 on the way back, so equality holds to one rounding
    DomainSpec s2 = make_II(3);
    FlatteningChart c2(s2);
    for (int trial = 0; trial < 100; ++trial) {
        CMat v = oracle::tangent(s2, rng);
        CMat back = c2.unflatten(c2.flatten(v));
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            double scale = std::abs(v.data()[i]);
            CHECK(std::abs(back.data()[i] - v.data()[i]) <= 2.0 * std::numeric_limits<double>::epsilon() * scale);
        }
        CHECK((back - back.transpose()).norm() == 0.0);
    }
}

TEST_CASE("chart basis is orthogonal in the Frobenius inner product") {
    for (auto s : {make_I(2, 3), make_II(3), make_III(5), make_IV(5)}) {
        FlatteningChart c(s);
        for (int a = 0; a < c.dim(); ++a)
            for (int b = 0; b < c.dim(); ++b) {
                cplx ip = (c.basis(a).adjoint() * c.basis(b)).trace();
                // kind III basis E_ij − E_ji has squared norm 2
                double expect = a == b ? (s.kind == Kind::III ? 2.0 : 1.0) : 0.0;
                CHECK(std::abs(ip - expect) < 1e-15);
            }
    }
}
