// SPDX-License-Identifier: MIT
// Randomized sweeps over many seeds.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "finsler/automorphisms.hpp"
#include "finsler/curvature.hpp"
#include "finsler/metrics.hpp"
#include "finsler/norms.hpp"
#include "oracles.hpp"

using namespace finsler;

namespace {

std::vector<DomainSpec> specs() {
    return {make_I(2, 3, 1.0, 2), make_I(3, 3, 0.3, 4), make_II(3, 1.0, 2), make_II(4, 2.0, 3),
            make_III(4, 1.0, 2), make_III(5, 0.5, 3), make_IV(5, paper_example_profile()),
            make_IV(7, exp_family_profile(0.1, 2)), make_IV(6)};
}

constexpr std::uint64_t kSeeds = 40;

} // namespace

TEST_CASE("F is absolutely homogeneous in the tangent") {
    for (const auto& s : specs())
        for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
            std::mt19937_64 rng(seed);
            CMat z = sample_point(s, seed), v = sample_tangent(s, seed + 99);
            std::normal_distribution<double> nd;
            cplx lam(nd(rng), nd(rng));
            double f = metric(s, z, v).F;
            CHECK(oracle::rel(metric(s, z, lam * v).F, std::abs(lam) * f) < 1e-12);
        }
}

TEST_CASE("F² is squeezed by the Bergman metric") {
    for (const auto& s : specs()) {
        if (s.kind == Kind::IV)
            continue;
        // nonzero eigenvalues of the block; kind III pairs them
        int rank = std::min(s.rows(), s.cols());
        if (s.kind == Kind::III)
            rank = 2 * (rank / 2);
        double floor = (1.0 + s.t * std::pow(rank, 1.0 / s.k - 1.0)) / (1.0 + s.t);
        for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
            CMat z = sample_point(s, seed), v = sample_tangent(s, seed + 7);
            double f2 = metric(s, z, v).F_squared, b = bergman(s, z, v);
            CHECK(f2 <= b * (1.0 + 1e-12));
            CHECK(f2 >= b * floor * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("kind IV metric is r̃·φ(s̃) with s̃ in [0,1]") {
    for (const auto& s : specs()) {
        if (s.kind != Kind::IV)
            continue;
        for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
            MetricValue m = metric(s, sample_point(s, seed), sample_tangent(s, seed + 3));
            double st = m.components.at("s_tilde");
            CHECK(st >= -1e-12);
            CHECK(st <= 1.0 + 1e-12);
            CHECK(oracle::rel(m.F_squared, m.components.at("r_tilde") * s.phi.eval(st)) < 1e-14);
        }
    }
}

TEST_CASE("metric is invariant under random automorphisms") {
    for (const auto& s : specs())
        for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
            Automorphism a = normalizer(s, sample_point(s, seed));
            CMat z = sample_point(s, seed + 1), v = sample_tangent(s, seed + 2);
            double before = metric(s, z, v).F_squared;
            double after = metric(s, finsler::apply(a, z), pushforward(a, z, v)).F_squared;
            CHECK(oracle::rel(after, before) < 1e-9);
        }
}

TEST_CASE("curvature is scale invariant and inside the bounds") {
    for (const auto& s : specs()) {
        CurvatureBounds sb = sectional_bounds(s);
        BisectionalBounds bb = bisectional_bounds(s);
        for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
            CMat z = sample_point(s, seed), v = sample_tangent(s, seed + 5), w = sample_tangent(s, seed + 6);
            double k = sectional(s, z, v);
            CHECK(oracle::rel(sectional(s, z, cplx(0.3, -2.0) * v), k) < 1e-11);
            CHECK(k >= sb.lower - 1e-9);
            CHECK(k <= sb.upper + 1e-9);
            double b = bisectional(s, z, v, w);
            CHECK(std::abs(bisectional(s, z, cplx(-1.5, 0.5) * v, cplx(0.0, 4.0) * w) - b) <
                  1e-11 * std::max(1.0, std::abs(b)));
            if (bb.applicable) {
                CHECK(b <= 1e-10);
                CHECK(b >= bb.lower - 1e-9);
            }
        }
    }
}

TEST_CASE("normalizer sends the point to the origin and is holomorphic") {
    for (const auto& s : specs())
        for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
            CMat z = sample_point(s, seed);
            Automorphism a = normalizer(s, z);
            CHECK(finsler::apply(a, z).norm() < 1e-10);
            CHECK(contains(s, finsler::apply(a, sample_point(s, seed + 1000))).inside);
        }
}

TEST_CASE("sampled points are inside and sampled tangents respect the symmetry") {
    for (const auto& s : specs())
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            Membership m = contains(s, sample_point(s, seed));
            CHECK(m.inside);
            CHECK(m.margin > 0.0);
            CMat v = sample_tangent(s, seed);
            CHECK((v - symmetrize(s, v)).norm() < 1e-14 * std::max(1.0, v.norm()));
        }
}
