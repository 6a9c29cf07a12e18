// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "finsler/domains.hpp"

namespace finsler {

double sectional(const DomainSpec& spec, const CMat& z, const CMat& v);
double bisectional(const DomainSpec& spec, const CMat& z, const CMat& v, const CMat& w);

struct CurvatureBounds {
    double lower = 0.0;
    double upper = 0.0;
    CMat attains_lower; ///< tangent at the origin reaching `lower`
    CMat attains_upper;
    double s_lower = 0.0; ///< kind IV: s̃ where `lower` is reached
    double s_upper = 0.0;
};

/// Sectional curvature bounds; kind IV by grid search plus golden-section refinement.
CurvatureBounds sectional_bounds(const DomainSpec& spec);

struct BisectionalBounds {
    bool applicable = true; ///< false when nonpositivity is not guaranteed (IV with φ′ < 0)
    double lower = 0.0;
    double upper = 0.0;
    std::optional<double> naive_lower; ///< kind IV: −2/(N·min φ), for comparison only
    std::string note;
};

BisectionalBounds bisectional_bounds(const DomainSpec& spec);

/// g(s) = 2{φ + (1−s)(φ − 2sφ′)}/(Nφ²); K_IV = −g(s̃).
double kind_iv_curvature_profile(const DomainSpec& spec, double s);

/// Tangent at the origin of unit norm with s̃ = s (kind IV).
CMat kind_iv_tangent_with_s(int N, double s);

/// H_ab = ∂²f/∂x_a∂x̄_b by central differences (complex coordinates).
CMat fd_complex_hessian(const std::function<double(const CVec&)>& f, const CVec& x, double h);

/// Mixed base-point Hessian of F²(·;V) at the origin in chart coordinates.
CMat fd_base_hessian(const DomainSpec& spec, const CMat& v, double h);

/// Vertical Hessian at the origin: F_A² for kinds I–III, f_IV² for kind IV.
CMat fd_vertical_hessian(const DomainSpec& spec, const CMat& v, double h);

double fd_sectional_oracle(const DomainSpec& spec, const CMat& v, double h = 1e-4);
double fd_bisectional_oracle(const DomainSpec& spec, const CMat& v, const CMat& w,
                             double h = 1e-4);

/// max |∂²F²/∂z_i∂v̄_j| at (0;V) by central differences.
double kahler_berwald_residual(const DomainSpec& spec, const CMat& v, double h = 1e-4);

struct CurvatureReport {
    double K = 0.0;
    std::optional<double> B;
    double lower = 0.0; ///< sectional bounds of the spec
    double upper = 0.0;
    std::optional<double> oracle_K;
    std::optional<double> oracle_B;
    std::optional<double> oracle_residual; ///< max relative gap to the oracles
    std::string inputs_digest;
};

/// Point evaluation; with `oracle` the tangents are carried to the origin and checked by FD.
CurvatureReport curvature_report(const DomainSpec& spec, const CMat& z, const CMat& v,
                                 const std::optional<CMat>& w, bool oracle, double h,
                                 std::uint64_t seed);

} // namespace finsler
