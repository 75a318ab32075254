// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#include "hyperball/geometry.hpp"

#include <cmath>
#include <sstream>

namespace hyperball {

namespace {

void require_finite(const CVec& z, const char* what) {
    for (const cplx& c : z) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw DomainError(std::string(what) + ": non-finite coordinate");
        }
    }
}

void require_same_dim(std::size_t a, std::size_t b) {
    if (a != b) {
        std::ostringstream msg;
        msg << "dimension mismatch: " << a << " vs " << b;
        throw DomainError(msg.str());
    }
}

}  // namespace

cplx inner(const CVec& z, const CVec& w) {
    require_same_dim(z.size(), w.size());
    cplx s = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * std::conj(w[i]);
    return s;
}

double norm2(const CVec& z) {
    double s = 0.0;
    for (const cplx& c : z) s += std::norm(c);
    return s;
}

BallPoint::BallPoint(CVec z) : z_(std::move(z)) {
    if (z_.empty()) throw DomainError("BallPoint: empty coordinate vector");
    require_finite(z_, "BallPoint");
    if (std::sqrt(hyperball::norm2(z_)) >= 1.0 - kBoundaryEps) {
        std::ostringstream msg;
        msg << "BallPoint: |z| = " << std::sqrt(hyperball::norm2(z_)) << " not inside the ball";
        throw DomainError(msg.str());
    }
}

BallPoint BallPoint::origin(std::size_t n) { return BallPoint(CVec(n, cplx(0.0))); }

SpherePoint::SpherePoint(CVec zeta) : z_(std::move(zeta)) {
    if (z_.empty()) throw DomainError("SpherePoint: empty coordinate vector");
    require_finite(z_, "SpherePoint");
    const double r = std::sqrt(hyperball::norm2(z_));
    if (r == 0.0) throw DomainError("SpherePoint: zero vector");
    for (cplx& c : z_) c /= r;
}

MobiusMap::MobiusMap(const BallPoint& a) : a_(a) {
    const std::size_t n = a.dim();
    const double aa = a.norm2();
    s_ = std::sqrt(1.0 - aa);
    identity_ = (aa == 0.0);
    q_.assign(n * n, cplx(0.0));
    if (identity_) {
        for (std::size_t i = 0; i < n; ++i) q_[i * n + i] = 1.0;
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            q_[i * n + j] = (s_ - 1.0) * a[i] * std::conj(a[j]) / aa;
        }
        q_[i * n + i] -= s_;
    }
}

CVec MobiusMap::apply(const CVec& z) const {
    require_same_dim(a_.dim(), z.size());
    if (identity_) return z;
    const std::size_t n = z.size();
    const cplx den = 1.0 - inner(z, a_.coords());
    CVec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        cplx acc = a_[i];
        for (std::size_t j = 0; j < n; ++j) acc += q_[i * n + j] * z[j];
        out[i] = acc / den;
    }
    return out;
}

BallPoint mobius_apply(const BallPoint& a, const BallPoint& z) {
    return BallPoint(MobiusMap(a).apply(z.coords()));
}

SpherePoint mobius_apply(const BallPoint& a, const SpherePoint& zeta) {
    return SpherePoint(MobiusMap(a).apply(zeta.coords()));
}

double mobius_product_residual(const BallPoint& a, const BallPoint& z, const BallPoint& w) {
    const MobiusMap phi(a);
    const CVec pz = phi.apply(z.coords());
    const CVec pw = phi.apply(w.coords());
    const CVec& av = a.coords();
    const cplx lhs = 1.0 - inner(pz, pw);
    const cplx rhs = (1.0 - inner(av, av)) * (1.0 - inner(z.coords(), w.coords())) /
                     ((1.0 - inner(z.coords(), av)) * (1.0 - inner(av, w.coords())));
    return std::abs(lhs - rhs);
}

double invariant_density(const BallPoint& z) {
    const double n = static_cast<double>(z.dim());
    return std::pow(1.0 - z.norm2(), -n - 1.0);
}

cplx poisson_kernel(cplx lambda, const SpherePoint& zeta, const BallPoint& z) {
    const double n = static_cast<double>(z.dim());
    const double base = (1.0 - z.norm2()) / std::norm(1.0 - inner(z.coords(), zeta.coords()));
    // principal branch of a positive base
    return std::exp(0.5 * (n + cplx(0.0, 1.0) * lambda) * std::log(base));
}

double hyperbolic_distance(const BallPoint& z, const BallPoint& w) {
    const CVec p = MobiusMap(z).apply(w.coords());
    return std::atanh(std::sqrt(norm2(p)));
}

}  // namespace hyperball
