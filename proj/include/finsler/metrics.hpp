// SPDX-License-Identifier: MIT
#pragma once

#include <map>
#include <string>

#include "finsler/domains.hpp"

namespace finsler {

/// Base-point factors (I − ZZ̄′)^{-1} and (I − Z̄′Z)^{-1}.
struct BaseFrame {
    CMat left;
    CMat right;

    explicit BaseFrame(const CMat& z);
    /// (I − ZZ̄′)^{-1} V (I − Z̄′Z)^{-1} V̄′
    CMat block(const CMat& v) const;
};

/// 𝔅_l(Z;V) = tr{[(I−ZZ̄′)^{-1}V(I−Z̄′Z)^{-1}V̄′]^l}
double frak_B(int l, const CMat& z, const CMat& v);

/// ℬ_{i,j}(Z;V,W) = tr{[…V…]^i [(…W…)]^j}
double cal_B(int i, int j, const CMat& z, const CMat& v, const CMat& w);

struct MetricValue {
    double F = 0.0;
    double F_squared = 0.0;
    std::map<std::string, double> components;
};

MetricValue metric(const DomainSpec& spec, const CMat& z, const CMat& v);

/// Bergman quadratic form ds²(V, V̄) at Z.
double bergman(const DomainSpec& spec, const CMat& z, const CMat& v);

/// Carathéodory = Kobayashi norm at the origin.
double reference_norm_CK(const DomainSpec& spec, const CMat& xi);

} // namespace finsler
