// SPDX-License-Identifier: MIT
#pragma once

#include <vector>

#include "finsler/domains.hpp"
#include "finsler/profile.hpp"

namespace finsler {

/// f²(V) = [tr(VV̄′) + t·tr((VV̄′)^k)^{1/k}] / (1+t), trace-power path.
double minkowski_f2(const CMat& v, double t, int k);
double minkowski_f(const CMat& v, double t, int k);
/// Same quantity from the singular values of V.
double minkowski_f2_sv(const CMat& v, double t, int k);

/// t·(Σλ_i^{2k})^{1/k} style root of a nonnegative power sum, underflow-safe.
double kth_root(double bk, int k);

/// Complex Hessian ∂²F²/∂v_a∂v̄_b at the origin in chart coordinates (kinds I–III).
CMat hessian_origin(const DomainSpec& spec, const CMat& v);

struct PhiValidation {
    bool valid = false;
    bool consistent = false; ///< positivity and derivative consistency
    double min_margin_1 = 0.0; ///< min of φ − 2sφ′
    double min_margin_2 = 0.0; ///< min of k̃
    double argmin_s = 0.0;     ///< location of the smaller of the two minima
    double argmin_s_1 = 0.0;
    double argmin_s_2 = 0.0;
};

/// k̃(s) = φ[φ + 2(2−3s)φ′] + 4s(1−s)[φφ″ − φ′²]
double k_tilde(const PhiProfile& phi, double s);

PhiValidation validate_phi(const PhiProfile& phi, int grid = 2001, double threshold = 1e-9);

struct IVNorm {
    double value = 0.0;
    double r = 0.0;
    double s = 0.0;
};

IVNorm f_IV_norm(const CMat& xi, const PhiProfile& phi);

struct HessianIVSpectrum {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
    double k_tilde = 0.0;
    double trace_half = 0.0; ///< φ + (2−3s)φ′ + 2s(1−s)φ″
    std::vector<double> predicted; ///< sorted ascending
};

struct HessianIV {
    CMat H;
    HessianIVSpectrum spectrum;
};

/// Vertical Hessian of f_IV² at ξ and the predicted spectrum.
HessianIV hessian_IV(const CMat& xi, const PhiProfile& phi);

} // namespace finsler
