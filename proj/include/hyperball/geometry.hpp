// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace hyperball {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double kBoundaryEps = 1e-12;

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// <z,w> = sum z_i conj(w_i)
cplx inner(const CVec& z, const CVec& w);
double norm2(const CVec& z);

class BallPoint {
public:
    BallPoint() = default;
    explicit BallPoint(CVec z);
    static BallPoint origin(std::size_t n);
    // n = 1 convenience
    static BallPoint scalar(cplx z) { return BallPoint(CVec{z}); }

    const CVec& coords() const { return z_; }
    std::size_t dim() const { return z_.size(); }
    double norm2() const { return hyperball::norm2(z_); }
    cplx operator[](std::size_t i) const { return z_[i]; }

private:
    CVec z_{cplx(0.0)};
};

class SpherePoint {
public:
    SpherePoint() = default;
    // normalizes; rejects the zero vector
    explicit SpherePoint(CVec zeta);
    static SpherePoint angle(double theta) { return SpherePoint(CVec{std::polar(1.0, theta)}); }

    const CVec& coords() const { return z_; }
    std::size_t dim() const { return z_.size(); }
    cplx operator[](std::size_t i) const { return z_[i]; }

private:
    CVec z_{cplx(1.0)};
};

// phi_a(z) = (a + Q_a z) / (1 - <z,a>), Q_a = (s_a - 1) a a^* / |a|^2 - s_a I, phi_o = id.
class MobiusMap {
public:
    explicit MobiusMap(const BallPoint& a);

    const BallPoint& a() const { return a_; }
    double s() const { return s_; }
    const CVec& Q() const { return q_; }  // row-major n x n

    // Works on closed-ball vectors; callers check the domain.
    CVec apply(const CVec& z) const;

private:
    BallPoint a_;
    double s_ = 1.0;
    CVec q_;
    bool identity_ = true;
};

BallPoint mobius_apply(const BallPoint& a, const BallPoint& z);
SpherePoint mobius_apply(const BallPoint& a, const SpherePoint& zeta);

double mobius_product_residual(const BallPoint& a, const BallPoint& z, const BallPoint& w);

double invariant_density(const BallPoint& z);

// P_{lambda,zeta}(z) = ((1-|z|^2)/|1-<z,zeta>|^2)^{(n + i lambda)/2}
cplx poisson_kernel(cplx lambda, const SpherePoint& zeta, const BallPoint& z);

double hyperbolic_distance(const BallPoint& z, const BallPoint& w);

// n = 1 fast paths used by the quadrature kernels.
namespace disk {

inline cplx mobius(cplx a, cplx z) {
    if (a == cplx(0.0)) return z;
    return (a - z) / (1.0 - z * std::conj(a));
}

// (1-|z|^2)/|1 - z conj(zeta)|^2 with zeta = e^{i angle}
inline double poisson_base(cplx z, cplx zeta) {
    const cplx d = 1.0 - z * std::conj(zeta);
    return (1.0 - std::norm(z)) / std::norm(d);
}

inline double distance(cplx z, cplx w) {
    return std::atanh(std::abs(mobius(z, w)));
}

}  // namespace disk

}  // namespace hyperball
