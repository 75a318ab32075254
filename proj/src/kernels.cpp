// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#include "hyperball/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hyperball/summation.hpp"

namespace hyperball::kernels {

namespace {

constexpr int kLanes = 8;      // zeta points per block
constexpr int kGroup = 4;      // ball nodes advanced together
constexpr int kAnchor = 64;    // phase recomputed exactly every kAnchor lambda steps
constexpr std::size_t kFold = 32;

std::atomic<int> g_threads{0};

int team_size() {
#ifdef _OPENMP
    if (omp_in_parallel()) return 1;
    const int cap = g_threads.load();
    return cap > 0 ? cap : omp_get_max_threads();
#else
    return 1;
#endif
}

// Nonnegative half of the symmetric lambda grid.
struct HalfAxis {
    int Q = 0;
    double lam0 = 0.0;
    double dl = 0.0;
    bool has_zero = false;
    int N = 0;
    int kpos(int q) const { return has_zero ? (N - 1) / 2 + q : N / 2 + q; }
    int kneg(int q) const { return has_zero ? (N - 1) / 2 - q : N / 2 - 1 - q; }
};

HalfAxis half_axis(const SpectralGrid& sg) {
    HalfAxis h;
    h.N = sg.n_lambda();
    h.has_zero = (h.N % 2 == 1);
    h.Q = h.has_zero ? (h.N + 1) / 2 : h.N / 2;
    h.lam0 = sg.lambda()[h.kpos(0)];
    h.dl = sg.dlambda();
    return h;
}

struct LaneGeom {
    double amp[kLanes];
    double hl[kLanes];  // half log of the Poisson base
};

inline void lane_geometry(cplx z, const SpectralGrid& sg, int j0, LaneGeom& g) {
    const int nz = sg.n_zeta();
    for (int l = 0; l < kLanes; ++l) {
        const int j = j0 + l;
        if (j < nz) {
            const double base = disk::poisson_base(z, sg.zeta(j));
            g.amp[l] = std::sqrt(base);
            g.hl[l] = 0.5 * std::log(base);
        } else {
            g.amp[l] = 0.0;
            g.hl[l] = 0.0;
        }
    }
}

struct Neumaier {
    std::vector<double> s, c;
    explicit Neumaier(std::size_t n) : s(n, 0.0), c(n, 0.0) {}
    void fold(std::vector<double>& part) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double x = part[i];
            const double t = s[i] + x;
            if (std::abs(s[i]) >= std::abs(x)) {
                c[i] += (s[i] - t) + x;
            } else {
                c[i] += (x - t) + s[i];
            }
            s[i] = t;
            part[i] = 0.0;
        }
    }
    double value(std::size_t i) const { return s[i] + c[i]; }
};

void forward_block(const cplx* z, const cplx* c, std::size_t count, const SpectralGrid& sg, const HalfAxis& ax,
                   int j0, cplx* out) {
    const int Q = ax.Q;
    const std::size_t len = static_cast<std::size_t>(Q) * kLanes;
    std::vector<double> pr_acc(len, 0.0), pi_acc(len, 0.0), nr_acc(len, 0.0), ni_acc(len, 0.0);
    Neumaier PR(len), PI(len), NR(len), NI(len);

    std::vector<std::size_t> active;
    active.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        if (c[i] != cplx(0.0)) active.push_back(i);

    std::size_t since_fold = 0;
    for (std::size_t a0 = 0; a0 < active.size(); a0 += kGroup) {
        const int G = static_cast<int>(std::min<std::size_t>(kGroup, active.size() - a0));
        alignas(64) double ccr[kGroup][kLanes], cci[kGroup][kLanes], hl[kGroup][kLanes];
        alignas(64) double sr[kGroup][kLanes], si[kGroup][kLanes];
        for (int g = 0; g < kGroup; ++g) {
            LaneGeom geo{};
            if (g < G) lane_geometry(z[active[a0 + g]], sg, j0, geo);
            const cplx cv = g < G ? c[active[a0 + g]] : cplx(0.0);
            for (int l = 0; l < kLanes; ++l) {
                const double amp = g < G ? geo.amp[l] : 0.0;
                ccr[g][l] = cv.real() * amp;
                cci[g][l] = cv.imag() * amp;
                hl[g][l] = g < G ? geo.hl[l] : 0.0;
                // kernel phase is -lambda * hl
                sr[g][l] = std::cos(ax.dl * hl[g][l]);
                si[g][l] = -std::sin(ax.dl * hl[g][l]);
            }
        }
        for (int q0 = 0; q0 < Q; q0 += kAnchor) {
            const int q1 = std::min(Q, q0 + kAnchor);
            alignas(64) double pr[kGroup][kLanes], pi[kGroup][kLanes];
            const double lam = ax.lam0 + q0 * ax.dl;
            for (int g = 0; g < kGroup; ++g)
                for (int l = 0; l < kLanes; ++l) {
                    pr[g][l] = std::cos(lam * hl[g][l]);
                    pi[g][l] = -std::sin(lam * hl[g][l]);
                }
            for (int q = q0; q < q1; ++q) {
                double* __restrict apr = &pr_acc[static_cast<std::size_t>(q) * kLanes];
                double* __restrict api = &pi_acc[static_cast<std::size_t>(q) * kLanes];
                double* __restrict anr = &nr_acc[static_cast<std::size_t>(q) * kLanes];
                double* __restrict ani = &ni_acc[static_cast<std::size_t>(q) * kLanes];
                for (int g = 0; g < kGroup; ++g) {
#pragma omp simd
                    for (int l = 0; l < kLanes; ++l) {
                        const double a = ccr[g][l] * pr[g][l];
                        const double b = cci[g][l] * pi[g][l];
                        const double cx = ccr[g][l] * pi[g][l];
                        const double d = cci[g][l] * pr[g][l];
                        apr[l] += a - b;
                        api[l] += cx + d;
                        anr[l] += a + b;
                        ani[l] += d - cx;
                        const double npr = pr[g][l] * sr[g][l] - pi[g][l] * si[g][l];
                        pi[g][l] = pr[g][l] * si[g][l] + pi[g][l] * sr[g][l];
                        pr[g][l] = npr;
                    }
                }
            }
        }
        since_fold += G;
        if (since_fold >= kFold) {
            PR.fold(pr_acc);
            PI.fold(pi_acc);
            NR.fold(nr_acc);
            NI.fold(ni_acc);
            since_fold = 0;
        }
    }
    PR.fold(pr_acc);
    PI.fold(pi_acc);
    NR.fold(nr_acc);
    NI.fold(ni_acc);

    const int nz = sg.n_zeta();
    for (int q = 0; q < Q; ++q) {
        for (int l = 0; l < kLanes && j0 + l < nz; ++l) {
            const std::size_t a = static_cast<std::size_t>(q) * kLanes + l;
            out[static_cast<std::size_t>(ax.kpos(q)) * nz + j0 + l] = cplx(PR.value(a), PI.value(a));
            if (!(ax.has_zero && q == 0))
                out[static_cast<std::size_t>(ax.kneg(q)) * nz + j0 + l] = cplx(NR.value(a), NI.value(a));
        }
    }
}

}  // namespace

void set_thread_cap(int threads) { g_threads.store(std::max(0, threads)); }
int thread_cap() { return g_threads.load(); }

int workers() { return team_size(); }

void forward(const cplx* z, const cplx* c, std::size_t count, const SpectralGrid& sg, cplx* out) {
    const HalfAxis ax = half_axis(sg);
    const int nblocks = (sg.n_zeta() + kLanes - 1) / kLanes;
    const int threads = team_size();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
    for (int b = 0; b < nblocks; ++b) forward_block(z, c, count, sg, ax, b * kLanes, out);
}

void inverse(const cplx* Fw, const SpectralGrid& sg, const cplx* z, std::size_t count, cplx* out) {
    const HalfAxis ax = half_axis(sg);
    const int Q = ax.Q;
    const int nz = sg.n_zeta();
    const int nblocks = (nz + kLanes - 1) / kLanes;
    // block layout [block][q][lane] for the +lambda and -lambda halves
    const std::size_t blen = static_cast<std::size_t>(Q) * kLanes;
    std::vector<double> fpr(blen * nblocks, 0.0), fpi(blen * nblocks, 0.0), fnr(blen * nblocks, 0.0),
        fni(blen * nblocks, 0.0);
    for (int b = 0; b < nblocks; ++b) {
        for (int q = 0; q < Q; ++q) {
            for (int l = 0; l < kLanes; ++l) {
                const int j = b * kLanes + l;
                if (j >= nz) continue;
                const std::size_t a = b * blen + static_cast<std::size_t>(q) * kLanes + l;
                const cplx p = Fw[static_cast<std::size_t>(ax.kpos(q)) * nz + j];
                fpr[a] = p.real();
                fpi[a] = p.imag();
                if (!(ax.has_zero && q == 0)) {
                    const cplx n = Fw[static_cast<std::size_t>(ax.kneg(q)) * nz + j];
                    fnr[a] = n.real();
                    fni[a] = n.imag();
                }
            }
        }
    }

    constexpr std::size_t kChunk = 64;
    const std::size_t nchunks = (count + kChunk - 1) / kChunk;
    const int threads = team_size();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
    for (std::size_t ch = 0; ch < nchunks; ++ch) {
        const std::size_t i0 = ch * kChunk, i1 = std::min(count, i0 + kChunk);
        std::vector<CompensatedSumC> sums(i1 - i0);
        for (int b = 0; b < nblocks; ++b) {
            const double* bpr = &fpr[b * blen];
            const double* bpi = &fpi[b * blen];
            const double* bnr = &fnr[b * blen];
            const double* bni = &fni[b * blen];
            for (std::size_t i = i0; i < i1; i += kGroup) {
                const int G = static_cast<int>(std::min<std::size_t>(kGroup, i1 - i));
                alignas(64) double amp[kGroup][kLanes], hl[kGroup][kLanes], sr[kGroup][kLanes], si[kGroup][kLanes];
                for (int g = 0; g < kGroup; ++g) {
                    LaneGeom geo{};
                    if (g < G) lane_geometry(z[i + g], sg, b * kLanes, geo);
                    for (int l = 0; l < kLanes; ++l) {
                        amp[g][l] = g < G ? geo.amp[l] : 0.0;
                        hl[g][l] = g < G ? geo.hl[l] : 0.0;
                        sr[g][l] = std::cos(ax.dl * hl[g][l]);
                        si[g][l] = std::sin(ax.dl * hl[g][l]);
                    }
                }
                CompensatedSumC lane_sum[kGroup];
                for (int q0 = 0; q0 < Q; q0 += kAnchor) {
                    const int q1 = std::min(Q, q0 + kAnchor);
                    alignas(64) double pr[kGroup][kLanes], pi[kGroup][kLanes];
                    alignas(64) double ar[kGroup][kLanes] = {}, ai[kGroup][kLanes] = {};
                    const double lam = ax.lam0 + q0 * ax.dl;
                    for (int g = 0; g < kGroup; ++g)
                        for (int l = 0; l < kLanes; ++l) {
                            pr[g][l] = std::cos(lam * hl[g][l]);
                            pi[g][l] = std::sin(lam * hl[g][l]);
                        }
                    for (int q = q0; q < q1; ++q) {
                        const double* xpr = bpr + static_cast<std::size_t>(q) * kLanes;
                        const double* xpi = bpi + static_cast<std::size_t>(q) * kLanes;
                        const double* xnr = bnr + static_cast<std::size_t>(q) * kLanes;
                        const double* xni = bni + static_cast<std::size_t>(q) * kLanes;
                        for (int g = 0; g < kGroup; ++g) {
#pragma omp simd
                            for (int l = 0; l < kLanes; ++l) {
                                const double sre = xpr[l] + xnr[l];
                                const double dim = xpi[l] - xni[l];
                                const double sim = xpi[l] + xni[l];
                                const double dre = xpr[l] - xnr[l];
                                // F+ p + F- conj(p)
                                ar[g][l] += sre * pr[g][l] - dim * pi[g][l];
                                ai[g][l] += sim * pr[g][l] + dre * pi[g][l];
                                const double npr = pr[g][l] * sr[g][l] - pi[g][l] * si[g][l];
                                pi[g][l] = pr[g][l] * si[g][l] + pi[g][l] * sr[g][l];
                                pr[g][l] = npr;
                            }
                        }
                    }
                    for (int g = 0; g < G; ++g)
                        for (int l = 0; l < kLanes; ++l) lane_sum[g].add(amp[g][l] * cplx(ar[g][l], ai[g][l]));
                }
                for (int g = 0; g < G; ++g) sums[i - i0 + g].add(lane_sum[g].value());
            }
        }
        for (std::size_t i = i0; i < i1; ++i) out[i] = sums[i - i0].value();
    }
}

void forward_reference(const cplx* z, const cplx* c, std::size_t count, const SpectralGrid& sg, cplx* out) {
    const int nz = sg.n_zeta();
    for (int k = 0; k < sg.n_lambda(); ++k) {
        const double lam = sg.lambda()[k];
        for (int j = 0; j < nz; ++j) {
            CompensatedSumC s;
            const cplx zeta = sg.zeta(j);
            for (std::size_t i = 0; i < count; ++i) {
                const double base = disk::poisson_base(z[i], zeta);
                s.add(c[i] * std::exp(cplx(0.5, -0.5 * lam) * std::log(base)));
            }
            out[static_cast<std::size_t>(k) * nz + j] = s.value();
        }
    }
}

void inverse_reference(const cplx* Fw, const SpectralGrid& sg, const cplx* z, std::size_t count, cplx* out) {
    const int nz = sg.n_zeta();
    for (std::size_t i = 0; i < count; ++i) {
        CompensatedSumC s;
        for (int k = 0; k < sg.n_lambda(); ++k) {
            const double lam = sg.lambda()[k];
            for (int j = 0; j < nz; ++j) {
                const double base = disk::poisson_base(z[i], sg.zeta(j));
                s.add(Fw[static_cast<std::size_t>(k) * nz + j] * std::exp(cplx(0.5, 0.5 * lam) * std::log(base)));
            }
        }
        out[i] = s.value();
    }
}

}  // namespace hyperball::kernels
