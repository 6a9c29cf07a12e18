// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "finsler/json_io.hpp"
#include "finsler/verify.hpp"

using namespace finsler;

namespace {

SuiteOptions opts(Suite suite, DomainSpec spec, int samples, std::uint64_t seed = 42) {
    SuiteOptions o;
    o.suite = suite;
    o.spec = std::move(spec);
    o.samples = samples;
    o.seed = seed;
    return o;
}

std::string text(const VerificationReport& r) { return dump(to_json(r)); }

const Suite all_suites[] = {Suite::Invariance, Suite::Pseudoconvexity, Suite::KahlerBerwald,
                            Suite::CurvatureOracle, Suite::Bounds};

} // namespace

TEST_CASE("suite names round-trip") {
    for (Suite s : all_suites)
        CHECK(suite_from_string(to_string(s)) == s);
    CHECK_THROWS_AS(suite_from_string("nope"), Error);
}

TEST_CASE("parallel and serial reports are byte-identical") {
    for (Suite s : all_suites) {
        for (const auto& spec : {make_I(2, 3, 1.0, 2), make_IV(5, paper_example_profile())}) {
            SuiteOptions o = opts(s, spec, 12);
            CHECK(text(run_suite(o)) == text(run_suite_serial(o)));
        }
    }
}

TEST_CASE("thread count does not change the report") {
    SuiteOptions o = opts(Suite::Invariance, make_III(4, 1.0, 2), 20);
    std::string base = text(run_suite_serial(o));
    for (int jobs : {1, 2, 3, 8}) {
        o.jobs = jobs;
        CHECK(text(run_suite(o)) == base);
    }
}

TEST_CASE("reports are deterministic in the seed") {
    SuiteOptions o = opts(Suite::Bounds, make_II(3, 1.0, 2), 10, 7);
    CHECK(text(run_suite(o)) == text(run_suite(o)));
    SuiteOptions other = o;
    other.seed = 8;
    CHECK(text(run_suite(other)) != text(run_suite(o)));
}

TEST_CASE("check conventions") {
    VerificationReport r = run_suite(opts(Suite::Bounds, make_I(2, 2, 1.0, 2), 10));
    REQUIRE(!r.checks.empty());
    for (const Check& c : r.checks) {
        CHECK(c.pass == (c.margin > 0.0));
        if (c.sample >= 0)
            CHECK(c.digest.size() == 16);
    }
    CHECK(r.all_pass());
    CHECK(r.summary.at("failures") == 0.0);
    CHECK(r.summary.count("worst_sectional_lower") == 1);
    CHECK(r.tolerances.at("suite") == default_tolerance(Suite::Bounds));
}

TEST_CASE("every suite passes on representative domains") {
    for (Suite s : all_suites)
        for (const auto& spec : {make_I(2, 3, 1.0, 2), make_II(3, 1.0, 3), make_III(4, 1.0, 2),
                                 make_IV(5, paper_example_profile())}) {
            VerificationReport r = run_suite(opts(s, spec, 8));
            INFO(to_string(s), " ", spec.label());
            CHECK(r.all_pass());
        }
}

TEST_CASE("tight tolerance produces failures, not exceptions") {
    SuiteOptions o = opts(Suite::CurvatureOracle, make_I(2, 2, 1.0, 2), 5);
    o.tol = 1e-14;
    VerificationReport r = run_suite(o);
    CHECK_FALSE(r.all_pass());
    CHECK(r.failures() > 0);
}

TEST_CASE("per-sample errors are captured as failing checks") {
    VerificationReport r = run_suite(opts(Suite::Pseudoconvexity, make_IV(5, kobayashi_profile()), 10));
    CHECK_FALSE(r.all_pass());
    bool saw = false;
    for (const Check& c : r.checks)
        if (c.name.rfind("error:", 0) == 0) {
            saw = true;
            CHECK_FALSE(c.pass);
        }
    CHECK(saw);
}

TEST_CASE("invalid options raise") {
    SuiteOptions o = opts(Suite::Invariance, make_I(2, 2), -1);
    CHECK_THROWS_AS(run_suite(o), Error);
    o.samples = 5;
    o.fd_step = 1e-2;
    CHECK_THROWS_AS(run_suite(o), Error);
    DomainSpec bad = make_I(2, 2);
    bad.k = 1;
    CHECK_THROWS_AS(run_suite(opts(Suite::Invariance, bad, 5)), Error);
    CHECK(run_suite(opts(Suite::Bounds, make_I(2, 2), 0)).samples == 0);
}

TEST_CASE("inputs digest") {
    DomainSpec s = make_I(2, 2);
    CMat a = CMat::Identity(2, 2);
    std::string d = inputs_digest(s, {a}, 1);
    CHECK(d.size() == 16);
    CHECK(d == inputs_digest(s, {a}, 1));
    CHECK(d != inputs_digest(s, {a}, 2));
    CHECK(d != inputs_digest(s, {2.0 * a}, 1));
    CHECK(d != inputs_digest(make_I(2, 2, 1.0, 3), {a}, 1));
}
