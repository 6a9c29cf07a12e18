// SPDX-License-Identifier: MIT
#include "finsler/profile.hpp"

#include <cmath>
#include <limits>
#include <regex>
#include <sstream>

#include "finsler/errors.hpp"

namespace finsler {

PhiProfile bergman_profile() {
    return {"bergman", [](double) { return 1.0; }, [](double) { return 0.0; },
            [](double) { return 0.0; }, {}};
}

PhiProfile kobayashi_profile() {
    // φ′ and φ″ blow up at s = 1; report -inf there instead of dividing by zero.
    constexpr double ninf = -std::numeric_limits<double>::infinity();
    return {"kobayashi",
            [](double s) { return 1.0 + std::sqrt(std::max(0.0, 1.0 - s)); },
            [=](double s) {
                double u = std::sqrt(std::max(0.0, 1.0 - s));
                return u > 0.0 ? -0.5 / u : ninf;
            },
            [=](double s) {
                double u = std::sqrt(std::max(0.0, 1.0 - s));
                return u > 0.0 ? -0.25 / (u * u * u) : ninf;
            },
            {}};
}

PhiProfile paper_example_profile() {
    return {"paper-example", [](double s) { return 1.0 + std::sqrt(1.0 + s); },
            [](double s) { return 0.5 / std::sqrt(1.0 + s); },
            [](double s) { return -0.25 * std::pow(1.0 + s, -1.5); }, {}};
}

PhiProfile exp_family_profile(double t, int k) {
    if (k < 2 || !(t >= 0.0))
        fail(ErrorCode::BadParams, "exp-family needs t >= 0 and k >= 2");
    double a = 1.0 / k;
    auto phi = [t, a](double s) { return std::exp(1.0 + t * std::pow(1.0 + s, a)); };
    auto d1 = [t, a, phi](double s) { return phi(s) * t * a * std::pow(1.0 + s, a - 1.0); };
    auto d2 = [t, a, phi, d1](double s) {
        return d1(s) * t * a * std::pow(1.0 + s, a - 1.0) +
               phi(s) * t * a * (a - 1.0) * std::pow(1.0 + s, a - 2.0);
    };
    std::ostringstream name;
    name << "exp-family(" << t << "," << k << ")";
    return {name.str(), phi, d1, d2, {}};
}

static double horner(const std::vector<double>& c, double s) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * s + *it;
    return acc;
}

PhiProfile polynomial_profile(const std::string& name, std::vector<double> phi,
                              std::vector<double> d1, std::vector<double> d2) {
    PhiProfile p;
    p.name = name;
    p.eval = [phi](double s) { return horner(phi, s); };
    p.d1 = [d1](double s) { return horner(d1, s); };
    p.d2 = [d2](double s) { return horner(d2, s); };
    p.poly = {std::move(phi), std::move(d1), std::move(d2)};
    return p;
}

PhiProfile profile_by_name(const std::string& name) {
    if (name == "bergman")
        return bergman_profile();
    if (name == "kobayashi")
        return kobayashi_profile();
    if (name == "paper-example")
        return paper_example_profile();
    static const std::regex exp_re(R"(exp-family\(\s*([-+0-9.eE]+)\s*,\s*([0-9]+)\s*\))");
    std::smatch m;
    if (std::regex_match(name, m, exp_re))
        return exp_family_profile(std::stod(m[1].str()), std::stoi(m[2].str()));
    fail(ErrorCode::InvalidProfile, "unknown profile '" + name + "'");
}

std::vector<std::string> builtin_profile_names() {
    return {"bergman", "kobayashi", "paper-example", "exp-family(t,k)"};
}

ProfileConsistency check_profile(const PhiProfile& phi, int grid, double tol) {
    ProfileConsistency out;
    const double h = 1e-5;
    const double h2 = 1e-4;
    for (int i = 0; i < grid; ++i) {
        double s = static_cast<double>(i) / (grid - 1);
        double f = phi.eval(s);
        if (!(f > 0.0) || !std::isfinite(f))
            out.positive = false;
        // One-sided second-order stencils keep the endpoints inside [0,1].
        double fd1, fd2;
        if (i == 0) {
            fd1 = (-3.0 * phi.eval(s) + 4.0 * phi.eval(s + h) - phi.eval(s + 2 * h)) / (2 * h);
            fd2 = (2.0 * phi.eval(s) - 5.0 * phi.eval(s + h2) + 4.0 * phi.eval(s + 2 * h2) -
                   phi.eval(s + 3 * h2)) / (h2 * h2);
        } else if (i == grid - 1) {
            fd1 = (3.0 * phi.eval(s) - 4.0 * phi.eval(s - h) + phi.eval(s - 2 * h)) / (2 * h);
            fd2 = (2.0 * phi.eval(s) - 5.0 * phi.eval(s - h2) + 4.0 * phi.eval(s - 2 * h2) -
                   phi.eval(s - 3 * h2)) / (h2 * h2);
        } else {
            double hh = std::min(h, std::min(s, 1.0 - s));
            double hs = std::min(h2, std::min(s, 1.0 - s));
            fd1 = (phi.eval(s + hh) - phi.eval(s - hh)) / (2 * hh);
            fd2 = (phi.eval(s + hs) - 2.0 * phi.eval(s) + phi.eval(s - hs)) / (hs * hs);
        }
        // errors relative to max(1, |φ|): stencil roundoff scales with φ
        double scale = std::max(1.0, std::abs(f));
        double e1 = std::abs(phi.d1(s) - fd1) / scale;
        double e2 = std::abs(phi.d2(s) - fd2) / scale;
        if (!std::isfinite(e1))
            e1 = std::numeric_limits<double>::infinity();
        if (!std::isfinite(e2))
            e2 = std::numeric_limits<double>::infinity();
        if (e1 > out.max_d1_error || e2 > out.max_d2_error)
            out.worst_s = s;
        out.max_d1_error = std::max(out.max_d1_error, e1);
        out.max_d2_error = std::max(out.max_d2_error, e2);
    }
    out.derivatives_ok = out.max_d1_error <= tol && out.max_d2_error <= tol;
    return out;
}

} // namespace finsler
