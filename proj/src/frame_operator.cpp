// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "hyperball/frames.hpp"
#include "hyperball/kernels.hpp"
#include "hyperball/special_functions.hpp"
#include "hyperball/summation.hpp"

namespace hyperball {

namespace {

constexpr int kStencil = 8;

using RMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RMatD = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RMat> view(const std::vector<cplx>& v, std::size_t rows, std::size_t cols) {
    return {v.data(), static_cast<long>(rows), static_cast<long>(cols)};
}

}  // namespace

FrameOperator::FrameOperator(const PartitionOfUnity& pou, const Window& psi, std::shared_ptr<const BallGrid> grid,
                             FrameOperatorSpec spec)
    : pou_(pou), psi_(normalized(psi)), grid_(std::move(grid)), spec_(spec) {
    const BallGrid& g = *grid_;
    J_ = pou_.J();
    K_ = pou_.K();
    N_ = g.size();
    rings_ = g.rings();
    const int team = kernels::workers();
    const cplx zeta0 = std::polar(1.0, pou_.zeta0());
    const double cut = std::tanh(psi_.reach_t);

    W_ = g.weights();
    ring_.resize(N_);
    amp_.resize(N_);
    std::vector<double> s(N_);
    double smax = 0.0;
    for (std::size_t i = 0; i < N_; ++i) {
        ring_[i] = static_cast<int>(i / static_cast<std::size_t>(g.angles()));
        const double base = disk::poisson_base(g.node(i), zeta0);
        amp_[i] = std::sqrt(base);
        s[i] = 0.5 * std::log(base);
        smax = std::max(smax, std::abs(s[i]));
    }

    // uniform s-grid resolving exp(i x_k s) for |x_k| <= xmax, Lagrange stencils
    double xmax = 0.0;
    for (double x : pou_.freq().centers) xmax = std::max(xmax, std::abs(x));
    const double ds = 3.14159265358979323846 / (std::max(1, spec_.oversample) * std::max(xmax, 1.0));
    const double s_lo = -smax - (kStencil + 1) * ds;
    M_ = static_cast<int>(std::ceil((2.0 * smax) / ds)) + 2 * (kStencil + 1) + 1;
    s_start_.resize(N_);
    s_w_.resize(N_ * kStencil);
    for (std::size_t i = 0; i < N_; ++i) {
        const double u = (s[i] - s_lo) / ds;
        const int m0 = static_cast<int>(std::floor(u)) - (kStencil / 2 - 1);
        s_start_[i] = m0;
        for (int a = 0; a < kStencil; ++a) {
            double w = 1.0;
            for (int b = 0; b < kStencil; ++b)
                if (b != a) w *= (u - (m0 + b)) / static_cast<double>(a - b);
            s_w_[i * kStencil + static_cast<std::size_t>(a)] = w;
        }
    }
    Phase_.resize(K_ * static_cast<std::size_t>(M_));
    for (std::size_t k = 0; k < K_; ++k)
        for (int m = 0; m < M_; ++m)
            Phase_[k * static_cast<std::size_t>(M_) + static_cast<std::size_t>(m)] =
                std::polar(1.0, pou_.freq().centers[k] * (s_lo + m * ds));

    // translated windows
    Psi_.assign(J_ * N_, cplx(0.0));
    const long Jl = static_cast<long>(J_);
#pragma omp parallel for schedule(dynamic, 4) num_threads(team)
    for (long j = 0; j < Jl; ++j) {
        const cplx zj = pou_.ball().centers[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < N_; ++i) {
            const double rho = std::abs(disk::mobius(zj, g.node(i)));
            if (rho < cut) Psi_[static_cast<std::size_t>(j) * N_ + i] = psi_(rho);
        }
    }

    // psi-blur of B_j, by a polar rule on U_o carried to U_j
    const GaussLegendre gl = gauss_legendre(spec_.local_radial, 0.0, pou_.ball().delta);
    std::vector<cplx> loc;
    std::vector<double> locw;
    for (int a = 0; a < spec_.local_radial; ++a)
        for (int b = 0; b < spec_.local_angular; ++b) {
            const double th = 2.0 * 3.14159265358979323846 * (b + 0.5 * (a % 2)) / spec_.local_angular;
            loc.push_back(std::polar(std::tanh(gl.x[a]), th));
            locw.push_back(gl.w[a] * std::sinh(2.0 * gl.x[a]) / spec_.local_angular);
        }
    A_.assign(J_ * N_, cplx(0.0));
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
    for (long j = 0; j < Jl; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        const cplx zj = pou_.ball().centers[uj];
        std::vector<cplx> wq;
        std::vector<double> cq;
        for (std::size_t q = 0; q < loc.size(); ++q) {
            const cplx w = disk::mobius(zj, loc[q]);
            const double b = pou_.spatial(uj, w);
            if (b == 0.0) continue;
            wq.push_back(w);
            cq.push_back(b * locw[q]);
        }
        for (std::size_t i = 0; i < N_; ++i) {
            const cplx u = g.node(i);
            if (std::abs(disk::mobius(zj, u)) >= std::tanh(psi_.reach_t + pou_.ball().delta)) continue;
            cplx acc = 0.0;
            for (std::size_t q = 0; q < wq.size(); ++q) {
                const double rho = std::abs(disk::mobius(wq[q], u));
                if (rho < cut) acc += cq[q] * psi_(rho);
            }
            A_[uj * N_ + i] = acc;
        }
    }

    // B_k per ring: integrate Bhat_k(lambda) phi_lambda(r) dnu on the elementary lambda segments
    const auto& fc = pou_.freq();
    std::vector<double> brk;
    for (std::size_t k = 0; k < K_; ++k) {
        brk.push_back(fc.lo(k));
        brk.push_back(fc.hi(k));
    }
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end()), brk.end());
    const GaussLegendre seg = gauss_legendre(spec_.lambda_nodes);
    std::vector<double> lq, wq;
    for (std::size_t b = 0; b + 1 < brk.size(); ++b) {
        const double a0 = brk[b], a1 = brk[b + 1];
        for (std::size_t q = 0; q < seg.x.size(); ++q) {
            const double lam = 0.5 * (a0 + a1) + 0.5 * (a1 - a0) * seg.x[q];
            lq.push_back(lam);
            wq.push_back(0.5 * (a1 - a0) * seg.w[q] * plancherel_density(lam, 1));
        }
    }
    const auto& rr = g.r();
    Bk_.assign(K_ * static_cast<std::size_t>(rings_), 0.0);
    const long nq = static_cast<long>(lq.size());
    std::vector<std::vector<std::pair<std::size_t, double>>> parts(lq.size());
    for (long q = 0; q < nq; ++q) parts[static_cast<std::size_t>(q)] = pou_.spectral_all(lq[static_cast<std::size_t>(q)]);
    // phi_lambda is even in lambda; evaluate once per |lambda|
    std::vector<double> phi(lq.size() * static_cast<std::size_t>(rings_));
#pragma omp parallel for schedule(dynamic, 16) num_threads(team)
    for (long q = 0; q < nq; ++q)
        for (int i = 0; i < rings_; ++i)
            phi[static_cast<std::size_t>(q) * static_cast<std::size_t>(rings_) + static_cast<std::size_t>(i)] =
                spherical_function_x(std::abs(lq[static_cast<std::size_t>(q)]), rr[static_cast<std::size_t>(i)] * rr[static_cast<std::size_t>(i)], 1)
                    .real();
    std::vector<CompensatedSum> acc(K_ * static_cast<std::size_t>(rings_));
    for (std::size_t q = 0; q < lq.size(); ++q)
        for (const auto& [k, v] : parts[q])
            for (int i = 0; i < rings_; ++i)
                acc[k * static_cast<std::size_t>(rings_) + static_cast<std::size_t>(i)].add(
                    v * wq[q] * phi[q * static_cast<std::size_t>(rings_) + static_cast<std::size_t>(i)]);
    for (std::size_t i = 0; i < acc.size(); ++i) Bk_[i] = acc[i].value();
}

CVec FrameOperator::dual_coefficients(const CVec& f) const {
    if (f.size() != N_) throw DomainError("frame operator: signal size mismatch");
    // Fr(j, ring) = sum_{u in ring} conj(A_j(u)) f(u) W(u)
    RMat Fr = RMat::Zero(static_cast<long>(J_), rings_);
    const long Jl = static_cast<long>(J_);
#pragma omp parallel for schedule(static) num_threads(kernels::workers())
    for (long j = 0; j < Jl; ++j) {
        const cplx* a = &A_[static_cast<std::size_t>(j) * N_];
        for (std::size_t i = 0; i < N_; ++i)
            if (a[i] != cplx(0.0)) Fr(j, ring_[i]) += std::conj(a[i]) * f[i] * W_[i];
    }
    const Eigen::Map<const RMatD> B(Bk_.data(), static_cast<long>(K_), rings_);
    const RMat c = Fr * B.transpose().cast<cplx>();
    return CVec(c.data(), c.data() + c.size());
}

CVec FrameOperator::synthesis(const CVec& c) const {
    if (c.size() != J_ * K_) throw DomainError("frame operator: coefficient size mismatch");
    const RMat H = view(c, J_, K_) * view(Phase_, K_, static_cast<std::size_t>(M_));
    CVec out(N_, cplx(0.0));
    const long Nl = static_cast<long>(N_);
#pragma omp parallel for schedule(static) num_threads(kernels::workers())
    for (long il = 0; il < Nl; ++il) {
        const auto i = static_cast<std::size_t>(il);
        const int m0 = s_start_[i];
        const double* w = &s_w_[i * kStencil];
        cplx acc = 0.0;
        for (std::size_t j = 0; j < J_; ++j) {
            const cplx p = Psi_[j * N_ + i];
            if (p == cplx(0.0)) continue;
            const cplx* h = H.data() + static_cast<long>(j) * M_ + m0;
            cplx e = 0.0;
            for (int a = 0; a < kStencil; ++a) e += w[a] * h[a];
            acc += p * e;
        }
        out[i] = amp_[i] * acc;
    }
    return out;
}

CVec FrameOperator::samples(const CVec& f) const {
    if (f.size() != N_) throw DomainError("frame operator: signal size mismatch");
    RMat G = RMat::Zero(static_cast<long>(J_), M_);
    const long Jl = static_cast<long>(J_);
#pragma omp parallel for schedule(static) num_threads(kernels::workers())
    for (long j = 0; j < Jl; ++j) {
        const cplx* p = &Psi_[static_cast<std::size_t>(j) * N_];
        cplx* row = G.data() + j * M_;
        for (std::size_t i = 0; i < N_; ++i) {
            if (p[i] == cplx(0.0) || f[i] == cplx(0.0)) continue;
            const cplx v = std::conj(p[i]) * amp_[i] * f[i] * W_[i];
            const double* w = &s_w_[i * kStencil];
            for (int a = 0; a < kStencil; ++a) row[s_start_[i] + a] += w[a] * v;
        }
    }
    const RMat d = G * view(Phase_, K_, static_cast<std::size_t>(M_)).adjoint();
    return CVec(d.data(), d.data() + d.size());
}

CVec FrameOperator::dual_synthesis(const CVec& d) const {
    if (d.size() != J_ * K_) throw DomainError("frame operator: coefficient size mismatch");
    const Eigen::Map<const RMatD> B(Bk_.data(), static_cast<long>(K_), rings_);
    const RMat Q = view(d, J_, K_) * B.cast<cplx>();
    CVec out(N_, cplx(0.0));
    const long Nl = static_cast<long>(N_);
#pragma omp parallel for schedule(static) num_threads(kernels::workers())
    for (long il = 0; il < Nl; ++il) {
        const auto i = static_cast<std::size_t>(il);
        cplx acc = 0.0;
        for (std::size_t j = 0; j < J_; ++j) {
            const cplx a = A_[j * N_ + i];
            if (a != cplx(0.0)) acc += a * Q(static_cast<long>(j), ring_[i]);
        }
        out[i] = acc;
    }
    return out;
}

CVec FrameOperator::blur_sum() const {
    CVec out(N_, cplx(0.0));
    for (std::size_t j = 0; j < J_; ++j)
        for (std::size_t i = 0; i < N_; ++i) out[i] += A_[j * N_ + i];
    return out;
}

}  // namespace hyperball
