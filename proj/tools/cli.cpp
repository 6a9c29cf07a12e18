// SPDX-License-Identifier: MIT
#include "finsler/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "finsler/json_io.hpp"

namespace finsler::cli {

namespace {

struct Options {
    std::string spec, config;
    std::string kind;
    std::optional<int> m, n, p, q, N, k;
    std::optional<double> t;
    std::string phi;
    bool relaxed = false;

    std::string point;
    bool origin = false;
    std::string tangent = "e11", tangent2;
    bool oracle = false;
    double fd_step = 1e-4;

    std::string suite = "invariance";
    int samples = 100;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    int jobs = 0;
    bool timing = false;

    std::string what = "point";
    int count = 1;

    std::string profile, profile_json;
};

json load_json(const std::string& text, const std::string& flag) {
    std::string body = text;
    auto first = text.find_first_not_of(" \t\r\n");
    bool inline_json = first != std::string::npos && (text[first] == '{' || text[first] == '[' ||
                                                      text[first] == '"');
    if (!inline_json) {
        std::ifstream in(text);
        if (!in)
            fail(ErrorCode::UsageError, flag + ": cannot open '" + text + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::UsageError, flag + ": invalid JSON (" + e.what() + ")");
    }
}

DomainSpec resolve_spec(const Options& o) {
    DomainSpec spec;
    bool have = false;
    if (!o.spec.empty()) {
        json named;
        if (!o.config.empty()) {
            json cfg = load_json(o.config, "--config");
            if (cfg.contains("specs") && cfg["specs"].contains(o.spec))
                named = cfg["specs"][o.spec];
        }
        spec = spec_from_json(named.is_null() ? load_json(o.spec, "--spec") : named);
        have = true;
    }
    if (!o.kind.empty()) {
        Kind kind = kind_from_string(o.kind);
        if (!have || spec.kind != kind) {
            spec = DomainSpec{};
            spec.kind = kind;
        }
        have = true;
    }
    if (!have)
        fail(ErrorCode::UsageError, "--kind or --spec is required");
    if (o.m) spec.m = *o.m;
    if (o.n) spec.n = *o.n;
    if (o.p) spec.p = *o.p;
    if (o.q) spec.q = *o.q;
    if (o.N) spec.N = *o.N;
    if (o.t) spec.t = *o.t;
    if (o.k) spec.k = *o.k;
    if (!o.phi.empty())
        spec.phi = o.phi.front() == '{' ? profile_from_json(load_json(o.phi, "--phi"))
                                        : profile_by_name(o.phi);
    if (o.relaxed)
        spec.relaxed = true;
    spec.validate();
    return spec;
}

std::uint64_t resolve_seed(const Options& o) {
    if (o.seed)
        return *o.seed;
    if (const char* env = std::getenv("FINSLER_SEED")) {
        try {
            std::size_t used = 0;
            std::uint64_t s = std::stoull(env, &used);
            if (used == std::string(env).size())
                return s;
        } catch (const std::exception&) {
        }
        fail(ErrorCode::UsageError, std::string("FINSLER_SEED is not an integer: '") + env + "'");
    }
    return 42;
}

CMat resolve_point(const DomainSpec& spec, const Options& o) {
    if (o.origin || o.point.empty())
        return CMat::Zero(spec.rows(), spec.cols());
    CMat z = matrix_from_json(load_json(o.point, "--point"));
    check_shape(spec, z);
    return z;
}

// identity: E_11+…+E_rr (I, II), the block sum V_0 (III), e_1 (IV)
CMat named_tangent(const DomainSpec& spec, const std::string& name, std::uint64_t seed,
                   const std::string& flag) {
    CMat v = CMat::Zero(spec.rows(), spec.cols());
    if (name == "random")
        return sample_tangent(spec, seed);
    if (name == "e11" || name == "e22") {
        int i = name == "e11" ? 0 : 1;
        if (spec.kind == Kind::III) {
            if (2 * i + 1 >= spec.q)
                fail(ErrorCode::UsageError, flag + ": tangent does not fit the spec");
            v(2 * i, 2 * i + 1) = 1.0;
            v(2 * i + 1, 2 * i) = -1.0;
        } else if (spec.kind == Kind::IV) {
            v(0, i) = 1.0;
        } else {
            if (i >= std::min(spec.rows(), spec.cols()))
                fail(ErrorCode::UsageError, flag + ": tangent does not fit the spec");
            v(i, i) = 1.0;
        }
        return v;
    }
    if (name == "identity") {
        switch (spec.kind) {
        case Kind::I:
        case Kind::II:
            for (int i = 0; i < std::min(spec.rows(), spec.cols()); ++i)
                v(i, i) = 1.0;
            break;
        case Kind::III:
            for (int i = 0; i + 1 < spec.q; i += 2) {
                v(i, i + 1) = 1.0;
                v(i + 1, i) = -1.0;
            }
            break;
        case Kind::IV:
            v(0, 0) = 1.0;
            break;
        }
        return v;
    }
    CMat m = matrix_from_json(load_json(name, flag));
    check_shape(spec, m);
    return m;
}

void add_spec_options(CLI::App* sub, Options& o) {
    sub->add_option("--spec", o.spec, "Spec as inline JSON, a file, or a name from --config");
    sub->add_option("--config", o.config, "JSON config with {\"specs\": {name: spec}}");
    sub->add_option("--kind", o.kind, "Domain kind I, II, III or IV");
    sub->add_option("--m", o.m, "Rows (kind I)");
    sub->add_option("--n", o.n, "Columns (kind I)");
    sub->add_option("--p", o.p, "Size (kind II)");
    sub->add_option("--q", o.q, "Size (kind III)");
    sub->add_option("--N", o.N, "Dimension (kind IV)");
    sub->add_option("--t", o.t, "Deformation parameter t >= 0");
    sub->add_option("--k", o.k, "Power k >= 2");
    sub->add_option("--phi", o.phi, "Profile name or custom profile JSON (kind IV)");
    sub->add_flag("--relaxed", o.relaxed, "Allow dimensions outside the irreducible range");
}

void add_point_options(CLI::App* sub, Options& o) {
    sub->add_option("--point", o.point, "Base point matrix JSON (inline or file)");
    sub->add_flag("--origin", o.origin, "Evaluate at the origin");
    sub->add_option("--tangent", o.tangent, "Tangent JSON or one of identity, e11, e22, random");
    sub->add_option("--seed", o.seed, "Seed for random tangents");
}

json with_spec(const DomainSpec& spec, json body) {
    json j = {{"spec", spec_to_json(spec)}};
    for (auto& [k, v] : body.items())
        j[k] = v;
    return j;
}

int cmd_eval(const Options& o, std::ostream& out) {
    DomainSpec spec = resolve_spec(o);
    std::uint64_t seed = resolve_seed(o);
    CMat z = resolve_point(spec, o);
    CMat v = named_tangent(spec, o.tangent, seed, "--tangent");
    out << dump(with_spec(spec, to_json(metric(spec, z, v)))) << '\n';
    return 0;
}

int cmd_curvature(const Options& o, std::ostream& out) {
    DomainSpec spec = resolve_spec(o);
    std::uint64_t seed = resolve_seed(o);
    CMat z = resolve_point(spec, o);
    CMat v = named_tangent(spec, o.tangent, seed, "--tangent");
    std::optional<CMat> w;
    if (!o.tangent2.empty())
        w = named_tangent(spec, o.tangent2, derive_seed(seed, 0, 1), "--tangent2");
    CurvatureReport rep = curvature_report(spec, z, v, w, o.oracle, o.fd_step, seed);
    out << dump(with_spec(spec, to_json(rep))) << '\n';
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
    SuiteOptions so;
    so.suite = suite_from_string(o.suite);
    so.spec = resolve_spec(o);
    so.samples = o.samples;
    so.seed = resolve_seed(o);
    so.tol = o.tol.value_or(-1.0);
    so.fd_step = o.fd_step;
    so.jobs = o.jobs;
    auto start = std::chrono::steady_clock::now();
    VerificationReport rep = run_suite(so);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json j = to_json(rep);
    if (so.suite == Suite::Invariance && so.samples > 0)
        j["audit"] = to_json(normalizer(so.spec, sample_point(so.spec, derive_seed(so.seed, 0, 0))));
    if (o.timing)
        j["wall_time"] = wall;
    out << dump(j) << '\n';
    return rep.all_pass() ? 0 : 1;
}

int cmd_sample(const Options& o, std::ostream& out) {
    DomainSpec spec = resolve_spec(o);
    std::uint64_t seed = resolve_seed(o);
    if (o.what != "point" && o.what != "tangent")
        fail(ErrorCode::UsageError, "--what must be point or tangent");
    if (o.count < 1)
        fail(ErrorCode::UsageError, "--count must be positive");
    json items = json::array();
    for (int i = 0; i < o.count; ++i) {
        std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i), o.what == "point" ? 0 : 1);
        CMat m = o.what == "point" ? sample_point(spec, s) : sample_tangent(spec, s);
        json item = {{"index", i}, {"matrix", matrix_to_json(m)}};
        if (o.what == "point")
            item["margin"] = contains(spec, m).margin;
        items.push_back(item);
    }
    out << dump(with_spec(spec, {{"seed", seed}, {"what", o.what}, {"samples", items}})) << '\n';
    return 0;
}

int cmd_bounds(const Options& o, std::ostream& out) {
    DomainSpec spec = resolve_spec(o);
    json body = {{"sectional", to_json(sectional_bounds(spec))},
                 {"bisectional", to_json(bisectional_bounds(spec))}};
    out << dump(with_spec(spec, body)) << '\n';
    return 0;
}

int cmd_validate_phi(const Options& o, std::ostream& out) {
    PhiProfile phi;
    if (!o.profile_json.empty())
        phi = profile_from_json(load_json(o.profile_json, "--profile-json"));
    else if (!o.profile.empty())
        phi = profile_by_name(o.profile);
    else
        fail(ErrorCode::UsageError, "--profile or --profile-json is required");
    PhiValidation v = validate_phi(phi);
    json j = {{"profile", profile_to_json(phi)}};
    json body = to_json(v);
    for (auto& [k, x] : body.items())
        j[k] = x;
    out << dump(j) << '\n';
    return v.valid ? 0 : 1;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Invariant Kähler-Berwald metrics on the classical domains"};
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "Evaluate F(Z;V)");
    add_spec_options(eval, o);
    add_point_options(eval, o);

    auto* curv = app.add_subcommand("curvature", "Holomorphic sectional and bisectional curvature");
    add_spec_options(curv, o);
    add_point_options(curv, o);
    curv->add_option("--tangent2", o.tangent2, "Second tangent for the bisectional curvature");
    curv->add_flag("--oracle", o.oracle, "Cross-check against the finite-difference oracle");
    curv->add_option("--fd-step", o.fd_step, "Finite-difference step");

    auto* ver = app.add_subcommand("verify", "Run a verification suite");
    add_spec_options(ver, o);
    ver->add_option("--suite", o.suite,
                    "invariance, pseudoconvexity, kahler-berwald, curvature-oracle or bounds");
    ver->add_option("--samples", o.samples, "Number of random samples");
    ver->add_option("--seed", o.seed, "Base seed (default FINSLER_SEED, else 42)");
    ver->add_option("--tol", o.tol, "Suite tolerance (default per suite)");
    ver->add_option("--fd-step", o.fd_step, "Finite-difference step");
    ver->add_option("--jobs", o.jobs, "Worker threads (0: all)");
    ver->add_flag("--timing", o.timing, "Add wall_time to the report");

    auto* smp = app.add_subcommand("sample", "Draw random points or tangents");
    add_spec_options(smp, o);
    smp->add_option("--what", o.what, "point or tangent");
    smp->add_option("--count", o.count, "Number of samples");
    smp->add_option("--seed", o.seed, "Base seed (default FINSLER_SEED, else 42)");

    auto* bnd = app.add_subcommand("bounds", "Curvature bounds of a spec");
    add_spec_options(bnd, o);

    auto* vphi = app.add_subcommand("validate-phi", "Check a kind IV profile");
    vphi->add_option("--profile", o.profile, "Built-in profile name");
    vphi->add_option("--profile-json", o.profile_json, "Custom profile JSON (inline or file)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "finsler: " << e.what() << '\n';
        out << dump(error_envelope(ErrorCode::UsageError, e.what())) << '\n';
        return 2;
    }

    try {
        if (eval->parsed()) return cmd_eval(o, out);
        if (curv->parsed()) return cmd_curvature(o, out);
        if (ver->parsed()) return cmd_verify(o, out);
        if (smp->parsed()) return cmd_sample(o, out);
        if (bnd->parsed()) return cmd_bounds(o, out);
        if (vphi->parsed()) return cmd_validate_phi(o, out);
    } catch (const Error& e) {
        err << "finsler: " << to_string(e.code()) << ": " << e.what() << '\n';
        out << dump(error_envelope(e.code(), e.what())) << '\n';
        return 2;
    }
    return 2;
}

} // namespace finsler::cli
