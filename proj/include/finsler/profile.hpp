// SPDX-License-Identifier: MIT
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace finsler {

/// Smooth positive profile φ on [0,1] with its first two derivatives.
struct PhiProfile {
    std::string name;
    std::function<double(double)> eval;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    /// Non-empty for polynomial profiles; kept for serialization.
    std::vector<std::vector<double>> poly;
};

PhiProfile bergman_profile();
PhiProfile kobayashi_profile();
PhiProfile paper_example_profile();
PhiProfile exp_family_profile(double t, int k);

/// Custom profile from coefficient lists (lowest degree first) for φ, φ′, φ″.
PhiProfile polynomial_profile(const std::string& name, std::vector<double> phi,
                              std::vector<double> d1, std::vector<double> d2);

/// Resolve "bergman", "kobayashi", "paper-example" or "exp-family(t,k)".
PhiProfile profile_by_name(const std::string& name);

std::vector<std::string> builtin_profile_names();

struct ProfileConsistency {
    bool positive = true;
    bool derivatives_ok = true;
    double max_d1_error = 0.0;
    double max_d2_error = 0.0;
    double worst_s = 0.0;
};

/// φ > 0 and d1, d2 against differences of eval on a uniform grid, relative to max(1, φ).
ProfileConsistency check_profile(const PhiProfile& phi, int grid = 1001, double tol = 1e-6);

} // namespace finsler
