// SPDX-License-Identifier: MIT
#include "finsler/domains.hpp"

#include <cmath>
#include <random>

namespace finsler {

const char* to_string(Kind kind) {
    switch (kind) {
    case Kind::I: return "I";
    case Kind::II: return "II";
    case Kind::III: return "III";
    case Kind::IV: return "IV";
    }
    return "?";
}

Kind kind_from_string(const std::string& s) {
    if (s == "I") return Kind::I;
    if (s == "II") return Kind::II;
    if (s == "III") return Kind::III;
    if (s == "IV") return Kind::IV;
    fail(ErrorCode::BadParams, "unknown domain kind '" + s + "'");
}

int DomainSpec::rows() const {
    switch (kind) {
    case Kind::I: return m;
    case Kind::II: return p;
    case Kind::III: return q;
    case Kind::IV: return 1;
    }
    return 0;
}

int DomainSpec::cols() const {
    switch (kind) {
    case Kind::I: return n;
    case Kind::II: return p;
    case Kind::III: return q;
    case Kind::IV: return N;
    }
    return 0;
}

int DomainSpec::dim() const {
    switch (kind) {
    case Kind::I: return m * n;
    case Kind::II: return p * (p + 1) / 2;
    case Kind::III: return q * (q - 1) / 2;
    case Kind::IV: return N;
    }
    return 0;
}

double DomainSpec::scale() const {
    switch (kind) {
    case Kind::I: return m + n;
    case Kind::II: return p + 1;
    case Kind::III: return q - 1;
    case Kind::IV: return 2.0 * N;
    }
    return 0.0;
}

int DomainSpec::rank() const {
    switch (kind) {
    case Kind::I: return m;
    case Kind::II: return p;
    case Kind::III: return q;
    case Kind::IV: return 2;
    }
    return 0;
}

void DomainSpec::validate() const {
    switch (kind) {
    case Kind::I:
        if (m < 1 || m > n)
            fail(ErrorCode::BadParams, "kind I needs 1 <= m <= n");
        break;
    case Kind::II:
        if (p < (relaxed ? 1 : 2))
            fail(ErrorCode::BadParams, "kind II needs p >= 2");
        break;
    case Kind::III:
        if (q < (relaxed ? 2 : 4))
            fail(ErrorCode::BadParams, "kind III needs q >= 4");
        break;
    case Kind::IV:
        if (N < (relaxed ? 2 : 5))
            fail(ErrorCode::BadParams, "kind IV needs N >= 5");
        if (!phi.eval)
            fail(ErrorCode::InvalidProfile, "kind IV needs a profile");
        return;
    }
    if (!(t >= 0.0) || !std::isfinite(t))
        fail(ErrorCode::BadParams, "t must be a finite nonnegative number");
    if (k < 2)
        fail(ErrorCode::BadParams, "k must be >= 2");
}

std::string DomainSpec::label() const {
    switch (kind) {
    case Kind::I: return "I(" + std::to_string(m) + "," + std::to_string(n) + ")";
    case Kind::II: return "II(" + std::to_string(p) + ")";
    case Kind::III: return "III(" + std::to_string(q) + ")";
    case Kind::IV: return "IV(" + std::to_string(N) + ")";
    }
    return "?";
}

DomainSpec make_I(int m, int n, double t, int k) {
    DomainSpec s;
    s.kind = Kind::I;
    s.m = m;
    s.n = n;
    s.t = t;
    s.k = k;
    return s;
}

DomainSpec make_II(int p, double t, int k) {
    DomainSpec s;
    s.kind = Kind::II;
    s.p = p;
    s.t = t;
    s.k = k;
    return s;
}

DomainSpec make_III(int q, double t, int k) {
    DomainSpec s;
    s.kind = Kind::III;
    s.q = q;
    s.t = t;
    s.k = k;
    return s;
}

DomainSpec make_IV(int N, PhiProfile phi) {
    DomainSpec s;
    s.kind = Kind::IV;
    s.N = N;
    s.phi = std::move(phi);
    return s;
}

void check_shape(const DomainSpec& spec, const CMat& z) {
    if (z.rows() != spec.rows() || z.cols() != spec.cols())
        fail(ErrorCode::ShapeMismatch,
             "expected " + std::to_string(spec.rows()) + "x" + std::to_string(spec.cols()) +
                 " matrix, got " + std::to_string(z.rows()) + "x" + std::to_string(z.cols()));
    if (!z.allFinite())
        fail(ErrorCode::ShapeMismatch, "matrix has non-finite entries");
}

void check_symmetry(const DomainSpec& spec, const CMat& z) {
    check_shape(spec, z);
    const double tol = default_tolerances().abs_floor;
    if (spec.kind == Kind::II && (z - z.transpose()).cwiseAbs().maxCoeff() > tol)
        fail(ErrorCode::SymmetryViolation, "kind II matrices must be symmetric");
    if (spec.kind == Kind::III && (z + z.transpose()).cwiseAbs().maxCoeff() > tol)
        fail(ErrorCode::SymmetryViolation, "kind III matrices must be skew-symmetric");
}

CMat symmetrize(const DomainSpec& spec, const CMat& z) {
    if (spec.kind == Kind::II)
        return 0.5 * (z + z.transpose());
    if (spec.kind == Kind::III)
        return 0.5 * (z - z.transpose());
    return z;
}

Membership contains(const DomainSpec& spec, const CMat& z) {
    check_symmetry(spec, z);
    Membership out;
    if (spec.kind == Kind::IV) {
        cplx a = (z * z.transpose())(0, 0);
        double zz = z.squaredNorm();
        double delta = 1.0 + std::norm(a) - 2.0 * zz;
        double slack = 1.0 - std::abs(a);
        out.margin = std::min(delta, slack);
        out.inside = out.margin > 0.0;
        return out;
    }
    // I − ZZ̄′ covers all three: for II it is I − ZZ̄, for III it is I + ZZ̄.
    CMat zs = symmetrize(spec, z);
    CMat g = CMat::Identity(zs.rows(), zs.rows()) - zs * zs.adjoint();
    out.margin = min_eigenvalue(g);
    out.inside = out.margin > 0.0;
    return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t stream) {
    // splitmix64 finalizer over a mixed key
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)) ^ (0xbf58476d1ce4e5b9ULL * (stream + 1));
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

CMat gaussian(std::mt19937_64& gen, int r, int c) {
    std::normal_distribution<double> nd(0.0, 1.0);
    CMat g(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            double re = nd(gen);
            double im = nd(gen);
            g(i, j) = cplx(re, im);
        }
    return g;
}

CMat symmetry_class(const DomainSpec& spec, const CMat& g) {
    if (spec.kind == Kind::II)
        return g + g.transpose();
    if (spec.kind == Kind::III)
        return g - g.transpose();
    return g;
}

} // namespace

CMat sample_point(const DomainSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        CMat g = symmetry_class(spec, gaussian(gen, spec.rows(), spec.cols()));
        double u = unit(gen);
        if (spec.kind == Kind::IV) {
            double nrm = g.norm();
            if (nrm == 0.0)
                continue;
            CMat z = g * (0.9 * u / nrm);
            if (contains(spec, z).margin > 1e-6)
                return z;
            continue;
        }
        double sn = spectral_norm(g);
        if (sn == 0.0 || u <= 0.0)
            continue;
        double target = std::pow(0.98 * u, 1.0 / spec.rank());
        CMat z = g * (target / sn);
        if (contains(spec, z).margin > 1e-6)
            return z;
    }
    fail(ErrorCode::SamplerExhausted, "sample_point gave up after 10000 attempts");
}

CMat sample_tangent(const DomainSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::mt19937_64 gen(seed ^ 0x5bd1e995ULL);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        CMat g = symmetry_class(spec, gaussian(gen, spec.rows(), spec.cols()));
        double nrm = g.norm();
        if (nrm > 0.0)
            return g / nrm;
    }
    fail(ErrorCode::SamplerExhausted, "sample_tangent gave up after 10000 attempts");
}

FlatteningChart::FlatteningChart(const DomainSpec& spec)
    : kind_(spec.kind), rows_(spec.rows()), cols_(spec.cols()), dim_(spec.dim()) {
    slots_.reserve(dim_);
    if (kind_ == Kind::II) {
        for (int i = 0; i < rows_; ++i)
            for (int j = i; j < cols_; ++j)
                slots_.emplace_back(i, j);
    } else if (kind_ == Kind::III) {
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                slots_.emplace_back(i, j);
    } else {
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                slots_.emplace_back(i, j);
    }
}

CVec FlatteningChart::flatten(const CMat& v) const {
    if (v.rows() != rows_ || v.cols() != cols_)
        fail(ErrorCode::ShapeMismatch, "flatten: wrong matrix shape");
    const double tol = default_tolerances().abs_floor;
    if (kind_ == Kind::II && (v - v.transpose()).cwiseAbs().maxCoeff() > tol)
        fail(ErrorCode::SymmetryViolation, "flatten: kind II needs a symmetric matrix");
    if (kind_ == Kind::III && (v + v.transpose()).cwiseAbs().maxCoeff() > tol)
        fail(ErrorCode::SymmetryViolation, "flatten: kind III needs a skew-symmetric matrix");
    CVec x(dim_);
    for (int a = 0; a < dim_; ++a) {
        auto [i, j] = slots_[a];
        x(a) = v(i, j);
        if (kind_ == Kind::II && i != j)
            x(a) *= std::sqrt(2.0);
    }
    return x;
}

CMat FlatteningChart::unflatten(const CVec& x) const {
    if (x.size() != dim_)
        fail(ErrorCode::ShapeMismatch, "unflatten: wrong vector length");
    CMat v = CMat::Zero(rows_, cols_);
    for (int a = 0; a < dim_; ++a) {
        auto [i, j] = slots_[a];
        if (kind_ == Kind::II) {
            cplx e = (i == j) ? x(a) : x(a) / std::sqrt(2.0);
            v(i, j) = e;
            v(j, i) = e;
        } else if (kind_ == Kind::III) {
            v(i, j) = x(a);
            v(j, i) = -x(a);
        } else {
            v(i, j) = x(a);
        }
    }
    return v;
}

CMat FlatteningChart::basis(int a) const {
    CVec e = CVec::Zero(dim_);
    e(a) = 1.0;
    return unflatten(e);
}

} // namespace finsler
