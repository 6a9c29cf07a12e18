// SPDX-License-Identifier: MIT
#include "finsler/json_io.hpp"

#include <cmath>

namespace finsler {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::UsageError, what); }

int require_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        bad(std::string("missing integer field '") + key + "'");
    return j[key].get<int>();
}

// NaN and infinities are not JSON numbers.
json number(double x) {
    if (std::isfinite(x))
        return x;
    return nullptr;
}

} // namespace

json matrix_to_json(const CMat& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

CMat matrix_from_json(const json& j) {
    if (!j.is_object())
        bad("matrix must be an object with rows, cols, data");
    int r = require_int(j, "rows"), c = require_int(j, "cols");
    if (r < 1 || c < 1)
        bad("matrix dimensions must be positive");
    if (!j.contains("data") || !j["data"].is_array())
        bad("matrix needs a data array");
    const json& d = j["data"];
    if (d.size() != static_cast<std::size_t>(r) * static_cast<std::size_t>(c))
        fail(ErrorCode::ShapeMismatch, "matrix data has " + std::to_string(d.size()) +
                                           " entries, expected " + std::to_string(r * c));
    CMat m(r, c);
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < c; ++k) {
            const json& e = d[static_cast<std::size_t>(i * c + k)];
            if (e.is_number()) {
                m(i, k) = cplx(e.get<double>(), 0.0);
            } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
                m(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
            } else {
                bad("matrix entries must be [re, im] pairs");
            }
        }
    return m;
}

json real_matrix_to_json(const RMat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

json profile_to_json(const PhiProfile& phi) {
    if (phi.poly.empty())
        return phi.name;
    return {{"name", phi.name}, {"phi", phi.poly.at(0)}, {"d1", phi.poly.at(1)}, {"d2", phi.poly.at(2)}};
}

PhiProfile profile_from_json(const json& j) {
    if (j.is_string())
        return profile_by_name(j.get<std::string>());
    if (!j.is_object())
        bad("phi must be a profile name or an object");
    auto coeffs = [&](const char* key) {
        if (!j.contains(key) || !j[key].is_array())
            bad(std::string("custom profile needs a '") + key + "' coefficient list");
        return j[key].get<std::vector<double>>();
    };
    std::string name = j.value("name", std::string("custom"));
    return polynomial_profile(name, coeffs("phi"), coeffs("d1"), coeffs("d2"));
}

json spec_to_json(const DomainSpec& spec) {
    json dims;
    switch (spec.kind) {
    case Kind::I: dims = {{"m", spec.m}, {"n", spec.n}}; break;
    case Kind::II: dims = {{"p", spec.p}}; break;
    case Kind::III: dims = {{"q", spec.q}}; break;
    case Kind::IV: dims = {{"N", spec.N}}; break;
    }
    json j = {{"kind", to_string(spec.kind)}, {"dims", dims}, {"t", spec.t}, {"k", spec.k},
              {"phi", profile_to_json(spec.phi)}};
    if (spec.relaxed)
        j["relaxed"] = true;
    return j;
}

DomainSpec spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        bad("spec needs a string 'kind'");
    DomainSpec s;
    s.kind = kind_from_string(j["kind"].get<std::string>());
    json dims = j.contains("dims") ? j["dims"] : j;
    switch (s.kind) {
    case Kind::I: s.m = require_int(dims, "m"); s.n = require_int(dims, "n"); break;
    case Kind::II: s.p = require_int(dims, "p"); break;
    case Kind::III: s.q = require_int(dims, "q"); break;
    case Kind::IV: s.N = require_int(dims, "N"); break;
    }
    if (j.contains("t")) {
        if (!j["t"].is_number())
            bad("'t' must be a number");
        s.t = j["t"].get<double>();
    }
    if (j.contains("k"))
        s.k = require_int(j, "k");
    if (j.contains("phi"))
        s.phi = profile_from_json(j["phi"]);
    s.relaxed = j.value("relaxed", false);
    s.validate();
    return s;
}

json to_json(const MetricValue& v) {
    json comps = json::object();
    for (const auto& [k, x] : v.components)
        comps[k] = number(x);
    return {{"F", number(v.F)}, {"F_squared", number(v.F_squared)}, {"components", comps}};
}

json to_json(const CurvatureReport& r) {
    json j = {{"K", number(r.K)}};
    j["B"] = r.B ? number(*r.B) : json(nullptr);
    j["bounds"] = {{"lower", number(r.lower)}, {"upper", number(r.upper)}};
    if (r.oracle_K)
        j["oracle"] = {{"K", number(*r.oracle_K)},
                       {"B", r.oracle_B ? number(*r.oracle_B) : json(nullptr)}};
    j["oracle_residual"] = r.oracle_residual ? number(*r.oracle_residual) : json(nullptr);
    j["inputs_digest"] = r.inputs_digest;
    return j;
}

json to_json(const CurvatureBounds& b) {
    json j = {{"lower", number(b.lower)}, {"upper", number(b.upper)}};
    j["attaining_vectors"] = {{"lower", matrix_to_json(b.attains_lower)},
                              {"upper", matrix_to_json(b.attains_upper)}};
    if (b.attains_lower.rows() == 1)
        j["s_tilde"] = {{"lower", b.s_lower}, {"upper", b.s_upper}};
    return j;
}

json to_json(const BisectionalBounds& b) {
    json j = {{"applicable", b.applicable}};
    if (b.applicable) {
        j["lower"] = number(b.lower);
        j["upper"] = number(b.upper);
    }
    if (b.naive_lower)
        j["naive_lower"] = number(*b.naive_lower);
    if (!b.note.empty())
        j["note"] = b.note;
    return j;
}

json to_json(const PhiValidation& v) {
    return {{"valid", v.valid},
            {"consistent", v.consistent},
            {"min_margin_1", number(v.min_margin_1)},
            {"min_margin_2", number(v.min_margin_2)},
            {"argmin_s", v.argmin_s},
            {"argmin_s_1", v.argmin_s_1},
            {"argmin_s_2", v.argmin_s_2}};
}

json to_json(const Automorphism& a) {
    json j = {{"kind", to_string(a.kind)}, {"Z0", matrix_to_json(a.z0)}};
    if (a.kind == Kind::IV) {
        j["X0"] = real_matrix_to_json(a.x0);
        j["A"] = real_matrix_to_json(a.ar);
        j["D"] = real_matrix_to_json(a.dr);
    } else {
        j["A"] = matrix_to_json(a.a);
        if (a.kind == Kind::I)
            j["D"] = matrix_to_json(a.d);
    }
    return j;
}

json to_json(const Check& c) {
    json j = {{"name", c.name}, {"pass", c.pass}, {"value", number(c.value)},
              {"threshold", number(c.threshold)}, {"margin", number(c.margin)}};
    if (c.sample >= 0)
        j["sample"] = c.sample;
    j["inputs_digest"] = c.digest;
    return j;
}

json to_json(const VerificationReport& r) {
    json checks = json::array();
    for (const Check& c : r.checks)
        checks.push_back(to_json(c));
    json tol = json::object();
    for (const auto& [k, x] : r.tolerances)
        tol[k] = x;
    json summary = json::object();
    for (const auto& [k, x] : r.summary)
        summary[k] = number(x);
    return {{"suite", r.suite},
            {"spec", spec_to_json(r.spec)},
            {"samples", r.samples},
            {"seed", r.seed},
            {"all_pass", r.all_pass()},
            {"failures", r.failures()},
            {"tolerances", tol},
            {"summary", summary},
            {"notes", r.notes},
            {"checks", checks}};
}

json error_envelope(ErrorCode code, const std::string& message) {
    return {{"error", {{"code", to_string(code)}, {"message", message}}}};
}

std::string dump(const json& j) { return j.dump(2); }

} // namespace finsler
