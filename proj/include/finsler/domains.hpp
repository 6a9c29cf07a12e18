// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <string>

#include "finsler/matrix_kernel.hpp"
#include "finsler/profile.hpp"

namespace finsler {

enum class Kind { I, II, III, IV };

const char* to_string(Kind kind);
Kind kind_from_string(const std::string& s);

/// Classical domain together with its metric parameters.
struct DomainSpec {
    Kind kind = Kind::I;
    int m = 1, n = 1; // kind I
    int p = 2;        // kind II
    int q = 4;        // kind III
    int N = 5;        // kind IV
    double t = 0.0;
    int k = 2;
    PhiProfile phi = bergman_profile();
    bool relaxed = false;

    int rows() const;
    int cols() const;
    /// Complex dimension of the tangent space.
    int dim() const;
    /// Scale factor m+n, p+1, q−1 (kinds I–III).
    double scale() const;
    /// Rank of the domain (number of independent singular values).
    int rank() const;
    /// Throws BadParams on dimension or parameter violations.
    void validate() const;
    /// Short label such as "I(2,3)" or "IV(5)".
    std::string label() const;
};

DomainSpec make_I(int m, int n, double t = 0.0, int k = 2);
DomainSpec make_II(int p, double t = 0.0, int k = 2);
DomainSpec make_III(int q, double t = 0.0, int k = 2);
DomainSpec make_IV(int N, PhiProfile phi = bergman_profile());

struct Membership {
    bool inside = false;
    double margin = 0.0; ///< min eigenvalue (I–III) or min slack (IV)
};

/// Throws ShapeMismatch / SymmetryViolation for malformed input.
void check_shape(const DomainSpec& spec, const CMat& z);
void check_symmetry(const DomainSpec& spec, const CMat& z);

/// Exact (anti)symmetrization for kinds II/III; identity otherwise.
CMat symmetrize(const DomainSpec& spec, const CMat& z);

Membership contains(const DomainSpec& spec, const CMat& z);

/// Independent seed stream for sample `index`, role `stream`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0);

CMat sample_point(const DomainSpec& spec, std::uint64_t seed);
CMat sample_tangent(const DomainSpec& spec, std::uint64_t seed);

/// Linear chart between matrix coordinates and C^d.
class FlatteningChart {
public:
    explicit FlatteningChart(const DomainSpec& spec);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    CVec flatten(const CMat& v) const;
    CMat unflatten(const CVec& x) const;
    /// Basis tangent unflatten(e_a).
    CMat basis(int a) const;
    /// Matrix position (i, j) of slot a (upper triangle for II/III).
    std::pair<int, int> slot(int a) const { return slots_[a]; }

private:
    Kind kind_;
    int rows_, cols_, dim_;
    std::vector<std::pair<int, int>> slots_;
};

} // namespace finsler
