// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#include "hyperball/frames.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "hyperball/csv.hpp"
#include "hyperball/kernels.hpp"
#include "hyperball/summation.hpp"

namespace hyperball {

namespace {

constexpr double kPi = 3.14159265358979323846;

// splitmix64; portable uniform doubles for the sampled checks
struct Rng {
    std::uint64_t s;
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

std::vector<int> greedy_coloring(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& adjacent,
                                 int& count) {
    std::vector<int> color(n, -1);
    count = 0;
    std::vector<char> used;
    for (std::size_t i = 0; i < n; ++i) {
        used.assign(static_cast<std::size_t>(count) + 1, 0);
        for (std::size_t j = 0; j < i; ++j)
            if (adjacent(i, j)) used[static_cast<std::size_t>(color[j])] = 1;
        int c = 0;
        while (used[static_cast<std::size_t>(c)]) ++c;
        color[i] = c;
        count = std::max(count, c + 1);
    }
    return color;
}

double v_weight(double lambda, int n = 1) { return weight_v(2.0 * n - 1.0, lambda); }

}  // namespace

double bump_chi(double s) {
    s = std::abs(s);
    return s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
}

double BallCovering::bump(std::size_t j, cplx w) const {
    return bump_chi(disk::distance(centers[j], w) / delta);
}

std::vector<std::size_t> BallCovering::containing(cplx w) const {
    std::vector<std::size_t> out;
    const double tw = std::atanh(std::abs(w));
    for (std::size_t j = 0; j < centers.size(); ++j) {
        if (std::abs(center_t[j] - tw) >= delta) continue;
        if (disk::distance(centers[j], w) < delta) out.push_back(j);
    }
    return out;
}

CoveringCheck check_ball_covering(const BallCovering& cov, std::uint64_t seed, std::size_t n_check) {
    CoveringCheck c;
    Rng rng{seed};
    c.samples = n_check;
    for (std::size_t i = 0; i < n_check; ++i) {
        const double t = cov.T_work * rng.uniform();
        const cplx w = std::polar(std::tanh(t), 2.0 * kPi * rng.uniform());
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < cov.size(); ++j) {
            if (std::abs(cov.center_t[j] - t) >= std::min(best, 2.0 * cov.delta)) continue;
            best = std::min(best, disk::distance(cov.centers[j], w));
        }
        c.worst_distance = std::max(c.worst_distance, best);
        if (!(best < cov.delta)) ++c.uncovered;
    }
    return c;
}

BallCovering build_ball_covering(double delta, double T_work, std::uint64_t seed, std::size_t n_check) {
    if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("build_ball_covering: delta must lie in (0, 1]");
    if (!(T_work > 0.0 && T_work <= 6.0)) throw DomainError("build_ball_covering: T_work must lie in (0, 6]");
    BallCovering cov;
    cov.delta = delta;
    cov.T_work = T_work;
    cov.centers.push_back(0.0);
    cov.center_t.push_back(0.0);
    cov.ring_counts.push_back(1);
    const int kmax = static_cast<int>(std::ceil(T_work / delta));
    for (int k = 1; k <= kmax; ++k) {
        const double t = k * delta;
        // circumference of the radius-t circle in the atanh distance is pi sinh(2t)
        const int m = static_cast<int>(std::ceil(kPi * std::sinh(2.0 * t) / delta));
        cov.ring_counts.push_back(m);
        const double off = (k % 2) ? kPi / m : 0.0;
        for (int a = 0; a < m; ++a) {
            cov.centers.push_back(std::polar(std::tanh(t), off + 2.0 * kPi * a / m));
            cov.center_t.push_back(t);
        }
    }
    cov.mu_U = std::sinh(delta) * std::sinh(delta);
    const CoveringCheck chk = check_ball_covering(cov, seed, n_check);
    if (chk.uncovered > 0) {
        std::ostringstream msg;
        msg << "build_ball_covering: " << chk.uncovered << " of " << chk.samples
            << " sampled points are uncovered (delta too large for the ring spacing)";
        throw CoveringError(msg.str());
    }
    const double two_delta = 2.0 * delta;
    cov.color = greedy_coloring(
        cov.size(),
        [&](std::size_t i, std::size_t j) {
            if (std::abs(cov.center_t[i] - cov.center_t[j]) >= two_delta) return false;
            return disk::distance(cov.centers[i], cov.centers[j]) < two_delta;
        },
        cov.r0);
    return cov;
}

double weighted_translation(double y, double x, int n) { return y + x / v_weight(y, n); }

double FrequencyCovering::bump(std::size_t k, double lambda) const {
    return bump_chi((lambda - centers[k]) / half_width[k]);
}

double FrequencyCovering::nu_ratio() const {
    const auto [mn, mx] = std::minmax_element(nu_measure.begin(), nu_measure.end());
    return *mx / *mn;
}

FrequencyCovering build_frequency_covering(double h, double Lambda) {
    if (!(h > 0.0)) throw DomainError("build_frequency_covering: h must be > 0");
    if (!(Lambda > 0.0)) throw DomainError("build_frequency_covering: Lambda must be > 0");
    FrequencyCovering fc;
    fc.h = h;
    fc.Lambda = Lambda;
    std::vector<double> pos{0.0};
    while (pos.back() + h / v_weight(pos.back()) < Lambda) pos.push_back(weighted_translation(pos.back(), h));
    for (std::size_t i = pos.size(); i-- > 1;) fc.centers.push_back(-pos[i]);
    for (double x : pos) fc.centers.push_back(x);
    const GaussLegendre gl = gauss_legendre(32);
    for (double x : fc.centers) {
        const double hw = h / v_weight(x);
        fc.half_width.push_back(hw);
        CompensatedSum s;
        for (std::size_t q = 0; q < gl.x.size(); ++q) s.add(gl.w[q] * hw * plancherel_density(x + hw * gl.x[q], 1));
        fc.nu_measure.push_back(s.value());
    }
    fc.color = greedy_coloring(
        fc.size(),
        [&](std::size_t i, std::size_t j) {
            return std::abs(fc.centers[i] - fc.centers[j]) < fc.half_width[i] + fc.half_width[j];
        },
        fc.s0);
    return fc;
}

PartitionOfUnity::PartitionOfUnity(BallCovering ball, FrequencyCovering freq, double zeta0_angle)
    : ball_(std::move(ball)), freq_(std::move(freq)), zeta0_(zeta0_angle) {}

std::vector<std::pair<std::size_t, double>> PartitionOfUnity::spatial_all(cplx w) const {
    std::vector<std::pair<std::size_t, double>> out;
    double total = 0.0;
    for (std::size_t j : ball_.containing(w)) {
        const double b = ball_.bump(j, w);
        if (b > 0.0) {
            out.emplace_back(j, b);
            total += b;
        }
    }
    if (!(total > 0.0)) throw CoveringError("partition: point outside the covered region");
    for (auto& p : out) p.second /= total;
    return out;
}

std::vector<std::pair<std::size_t, double>> PartitionOfUnity::spectral_all(double lambda) const {
    std::vector<std::pair<std::size_t, double>> out;
    double total = 0.0;
    const auto& c = freq_.centers;
    // centers are ascending and half widths shrink outwards; scan the neighbourhood
    auto it = std::lower_bound(c.begin(), c.end(), lambda);
    const std::size_t mid = static_cast<std::size_t>(it - c.begin());
    const std::size_t lo = mid > 64 ? mid - 64 : 0;
    const std::size_t hi = std::min(c.size(), mid + 64);
    for (std::size_t k = lo; k < hi; ++k) {
        const double b = freq_.bump(k, lambda);
        if (b > 0.0) {
            out.emplace_back(k, b);
            total += b;
        }
    }
    if (!(total > 0.0)) throw CoveringError("partition: lambda outside the covered range");
    for (auto& p : out) p.second /= total;
    return out;
}

double PartitionOfUnity::spatial(std::size_t j, cplx w) const {
    for (const auto& [jj, v] : spatial_all(w))
        if (jj == j) return v;
    return 0.0;
}

double PartitionOfUnity::spectral(std::size_t k, double lambda) const {
    for (const auto& [kk, v] : spectral_all(lambda))
        if (kk == k) return v;
    return 0.0;
}

PartitionCheck check_partition(const PartitionOfUnity& pou, std::uint64_t seed, std::size_t n_samples) {
    PartitionCheck c;
    c.samples = n_samples;
    c.min_value = 1.0;
    Rng rng{seed};
    const double T = pou.ball().T_work;
    const double L = pou.freq().Lambda;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const cplx w = std::polar(std::tanh(T * rng.uniform()), 2.0 * kPi * rng.uniform());
        const double lambda = L * (2.0 * rng.uniform() - 1.0);
        const auto sp = pou.spatial_all(w);
        const auto fr = pou.spectral_all(lambda);
        CompensatedSum s;
        for (const auto& a : sp)
            for (const auto& b : fr) {
                const double v = a.second * b.second;
                s.add(v);
                c.min_value = std::min(c.min_value, v);
                c.max_value = std::max(c.max_value, v);
            }
        c.max_sum_deviation = std::max(c.max_sum_deviation, std::abs(s.value() - 1.0));
        // probe just outside a random disc and interval
        const std::size_t j = static_cast<std::size_t>(rng.next() % pou.J());
        const cplx zj = pou.ball().centers[j];
        const double ang = 2.0 * kPi * rng.uniform();
        const cplx probe = disk::mobius(zj, std::polar(std::tanh(pou.ball().delta * (1.0 + 1e-9)), ang));
        if (std::abs(probe) < std::tanh(T)) {
            if (pou.ball().bump(j, probe) != 0.0) ++c.support_violations;
        }
        const std::size_t k = static_cast<std::size_t>(rng.next() % pou.K());
        const double lp = pou.freq().centers[k] + pou.freq().half_width[k] * (1.0 + 1e-9) * (rng.uniform() < 0.5 ? -1 : 1);
        if (pou.freq().bump(k, lp) != 0.0) ++c.support_violations;
    }
    return c;
}

double weight_quotient_bound(const PartitionOfUnity& pou, const WeightSpec& m) {
    // kappa_s(phi_a z) = kappa_s(a) kappa_s(z) |1 - <z,a>|^{2s} and v_r(a+b) <= 2^{r/2} v_r(a) v_r(b)
    const double d = pou.ball().delta;
    const double h = pou.freq().h;
    const double kap = std::pow(std::cosh(d), 2.0 * m.s) * std::exp(4.0 * m.s * d);
    const double v = std::pow(2.0, m.r) * std::pow(1.0 + h * h, m.r);
    return kap * v;
}

double max_weight_quotient(const PartitionOfUnity& pou, const WeightSpec& m) {
    const double d = pou.ball().delta;
    double kq = 1.0;
    for (double t : pou.ball().center_t)
        kq = std::max(kq, std::pow(std::cosh(t + d) / std::cosh(std::max(0.0, t - d)), 2.0 * m.s));
    double vq = 1.0;
    const auto& fc = pou.freq();
    for (std::size_t k = 0; k < fc.size(); ++k) {
        const double a = fc.lo(k), b = fc.hi(k);
        const double amax = std::max(std::abs(a), std::abs(b));
        const double amin = (a < 0.0 && b > 0.0) ? 0.0 : std::min(std::abs(a), std::abs(b));
        vq = std::max(vq, weight_v(m.r, amax) / weight_v(m.r, amin));
    }
    return kq * vq;
}

PhasePoint phase_translate(const PhasePoint& X, const PhasePoint& Z) {
    const cplx w = disk::mobius(X.w[0], Z.w[0]);
    return {BallPoint::scalar(w), X.lambda - Z.lambda, Z.zeta};
}

std::vector<PhasePoint> initial_set_probes(const PartitionOfUnity& pou, int per_axis) {
    if (per_axis < 2) throw DomainError("initial_set_probes: need at least 2 probes per axis");
    const double d = pou.ball().delta * (1.0 - 1e-9);
    const double h = pou.freq().h * (1.0 - 1e-9);
    std::vector<PhasePoint> out;
    for (int a = 0; a < per_axis; ++a) {
        const double t = d * a / (per_axis - 1);
        for (int b = 0; b < per_axis; ++b) {
            const cplx w = std::polar(std::tanh(t), 2.0 * kPi * b / per_axis);
            for (int c = 0; c < per_axis; ++c) {
                const double lam = -h + 2.0 * h * c / (per_axis - 1);
                out.push_back(PhasePoint::make(w, lam, pou.zeta0()));
            }
        }
    }
    return out;
}

double oscillation_estimate(const PartitionOfUnity& pou, const PhasePoint& X, const PhasePoint& Y, const Window& psi,
                            const BallGrid& grid, int per_axis) {
    const cplx rxy = reproducing_kernel(X, Y, psi, grid);
    double best = 0.0;
    for (PhasePoint Z : initial_set_probes(pou, per_axis)) {
        Z.zeta = X.zeta;
        best = std::max(best, std::abs(reproducing_kernel(phase_translate(X, Z), Y, psi, grid) - rxy));
    }
    return best;
}

OscillationReport oscillation_integral(const PartitionOfUnity& pou, const PhasePoint& X, const Window& psi,
                                       std::shared_ptr<const PhaseGrid> pg, std::shared_ptr<const BallGrid> grid,
                                       int per_axis) {
    const SampledBallFunction base = rho_apply(X, psi, grid);
    const PhaseFunction R0 = voice_forward(base, psi, pg);
    std::vector<double> osc(pg->size(), 0.0);
    for (PhasePoint Z : initial_set_probes(pou, per_axis)) {
        Z.zeta = X.zeta;
        const PhasePoint XZ = phase_translate(X, Z);
        if (std::abs(XZ.w[0] - X.w[0]) == 0.0 && XZ.lambda == X.lambda) continue;
        SampledBallFunction diff = rho_apply(XZ, psi, grid);
        for (std::size_t i = 0; i < diff.values.size(); ++i) diff.values[i] -= base.values[i];
        const PhaseFunction D = voice_forward(diff, psi, pg);
        for (std::size_t i = 0; i < osc.size(); ++i) osc[i] = std::max(osc[i], std::abs(D.values[i]));
    }
    OscillationReport r;
    CompensatedSum oi, ci;
    for (std::size_t i = 0; i < osc.size(); ++i) {
        oi.add(osc[i] * pg->weight(i));
        ci.add(std::abs(R0.values[i]) * pg->weight(i));
    }
    r.osc_integral = oi.value();
    r.C_psi = ci.value();
    r.gamma = r.C_psi > 0.0 ? r.osc_integral / r.C_psi : 0.0;
    return r;
}

namespace {

using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

void guard_dense(std::size_t P) {
    if (static_cast<double>(P) * static_cast<double>(P) > 4e8)
        throw DomainError("dense frame operator: phase grid too large (> 4e8 matrix entries)");
}

// Atoms sampled on the grid, scaled by sqrt(weight): column p = rho(X_p) psi.
CMat atom_matrix(const std::vector<PhasePoint>& X, const Window& psi, const BallGrid& grid) {
    const long N = static_cast<long>(grid.size()), P = static_cast<long>(X.size());
    CMat A(N, P);
#pragma omp parallel for schedule(static) num_threads(kernels::workers())
    for (long p = 0; p < P; ++p)
        for (long i = 0; i < N; ++i) {
            const auto ii = static_cast<std::size_t>(i);
            A(i, p) = rho_value(X[static_cast<std::size_t>(p)], psi, grid.node(ii)) * std::sqrt(grid.weight(ii));
        }
    return A;
}

struct PhiEntry {
    std::size_t y;   // phase node
    std::size_t jk;  // frame index
    double value;
};

std::vector<PhiEntry> partition_on_grid(const PartitionOfUnity& pou, const PhaseGrid& pg) {
    std::vector<PhiEntry> out;
    for (std::size_t y = 0; y < pg.size(); ++y) {
        const auto sp = pou.spatial_all(pg.w(y));
        const auto fr = pou.spectral_all(pg.lambda(y));
        for (const auto& a : sp)
            for (const auto& b : fr) out.push_back({y, pou.index(a.first, b.first), a.second * b.second});
    }
    return out;
}

}  // namespace

CVec assemble_T(const PartitionOfUnity& pou, const Window& psi, const PhaseGrid& pg, const BallGrid& grid) {
    const std::size_t P = pg.size();
    guard_dense(P);
    const auto phi = partition_on_grid(pou, pg);
    std::vector<std::size_t> used;
    for (const auto& e : phi) used.push_back(e.jk);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::vector<PhasePoint> frame_pts, grid_pts(P);
    for (std::size_t jk : used) frame_pts.push_back(pou.node(jk / pou.K(), jk % pou.K()));
    for (std::size_t p = 0; p < P; ++p) grid_pts[p] = pg.point(p);
    const CMat Ef = atom_matrix(frame_pts, psi, grid);
    const CMat Eg = atom_matrix(grid_pts, psi, grid);
    // Rf(q, x) = R(X_q, X_x) = sum_i e_q conj(rho_x)
    const CMat Rf = Ef.transpose() * Eg.conjugate();
    CVec T(P * P, cplx(0.0));
    for (const auto& e : phi) {
        const long q = static_cast<long>(std::lower_bound(used.begin(), used.end(), e.jk) - used.begin());
        const double c = e.value * pg.weight(e.y);
        for (std::size_t x = 0; x < P; ++x) T[x * P + e.y] += c * Rf(q, static_cast<long>(x));
    }
    return T;
}

CVec assemble_S(const PartitionOfUnity& pou, const Window& psi, const PhaseGrid& pg, const BallGrid& grid) {
    const std::size_t P = pg.size();
    guard_dense(P);
    const CVec R = reproducing_kernel_matrix(psi, pg, grid);
    const auto phi = partition_on_grid(pou, pg);
    // nearest phase node to each frame node
    const SpectralGrid& sg = pg.spectral();
    const TranslationGrid& tg = pg.translations();
    auto nearest = [&](std::size_t jk) {
        const PhasePoint X = pou.node(jk / pou.K(), jk % pou.K());
        std::size_t bw = 0;
        double dw = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < tg.size(); ++i) {
            const double d = disk::distance(tg.node(i), X.w[0]);
            if (d < dw) {
                dw = d;
                bw = i;
            }
        }
        std::size_t bl = 0;
        for (std::size_t k = 1; k < sg.lambda().size(); ++k)
            if (std::abs(sg.lambda()[k] - X.lambda) < std::abs(sg.lambda()[bl] - X.lambda)) bl = k;
        std::size_t bz = 0;
        const double z0 = std::arg(X.zeta[0]);
        auto adist = [](double a, double b) {
            const double d = std::fmod(std::abs(a - b), 2.0 * kPi);
            return std::min(d, 2.0 * kPi - d);
        };
        for (std::size_t j = 1; j < sg.zeta_angle().size(); ++j)
            if (adist(sg.zeta_angle()[j], z0) < adist(sg.zeta_angle()[bz], z0)) bz = j;
        return bw * sg.size() + bl * static_cast<std::size_t>(sg.n_zeta()) + bz;
    };
    std::vector<std::size_t> used;
    for (const auto& e : phi) used.push_back(e.jk);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::vector<std::size_t> near(used.size());
    for (std::size_t q = 0; q < used.size(); ++q) near[q] = nearest(used[q]);
    CVec S(P * P, cplx(0.0));
    // S(x, near(jk)) += sum_y phi_jk(y) conj(R(x, y)) xi(y)
    for (const auto& e : phi) {
        const std::size_t q = static_cast<std::size_t>(std::lower_bound(used.begin(), used.end(), e.jk) - used.begin());
        const double c = e.value * pg.weight(e.y);
        for (std::size_t x = 0; x < P; ++x) S[x * P + near[q]] += c * std::conj(R[x * P + e.y]);
    }
    return S;
}

CVec apply_dense(const CVec& M, const CVec& x) {
    const std::size_t P = x.size();
    if (M.size() != P * P) throw DomainError("apply_dense: size mismatch");
    CVec y(P);
    for (std::size_t i = 0; i < P; ++i) {
        CompensatedSumC s;
        for (std::size_t j = 0; j < P; ++j) s.add(M[i * P + j] * x[j]);
        y[i] = s.value();
    }
    return y;
}

namespace {

double wnorm(const CVec& x, const std::vector<double>& w) {
    CompensatedSum s;
    for (std::size_t i = 0; i < x.size(); ++i) s.add(std::norm(x[i]) * (w.empty() ? 1.0 : w[i]));
    return std::sqrt(s.value());
}

cplx winner(const CVec& a, const CVec& b, const std::vector<double>& w) {
    CompensatedSumC s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * std::conj(b[i]) * (w.empty() ? 1.0 : w[i]));
    return s.value();
}

}  // namespace

NeumannResult neumann_invert(const LinearMap& op, const CVec& F, double contraction, double tol, int max_iter,
                             const std::vector<double>& inner_weights) {
    if (!(contraction < 1.0)) {
        std::ostringstream msg;
        msg << "neumann_invert: operator is not contractive (||Id - op|| = " << contraction << ")";
        throw NonContractive(msg.str());
    }
    NeumannResult r;
    const double fn = wnorm(F, inner_weights);
    r.solution = F;
    if (fn == 0.0) return r;
    for (int it = 1; it <= max_iter; ++it) {
        const CVec opG = op(r.solution);
        CVec res(F.size());
        for (std::size_t i = 0; i < F.size(); ++i) res[i] = F[i] - opG[i];
        r.iterations = it;
        r.residual = wnorm(res, inner_weights) / fn;
        if (r.residual <= tol) return r;
        for (std::size_t i = 0; i < F.size(); ++i) r.solution[i] += res[i];
    }
    std::ostringstream msg;
    msg << "neumann_invert: residual " << r.residual << " after " << max_iter << " iterations";
    throw IterationLimit(msg.str());
}

double restricted_distance_to_identity(const LinearMap& op, const std::vector<CVec>& basis,
                                       const std::vector<double>& inner_weights) {
    const long m = static_cast<long>(basis.size());
    if (m == 0) return 0.0;
    std::vector<CVec> D(basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a) {
        const CVec ob = op(basis[a]);
        D[a].resize(ob.size());
        for (std::size_t i = 0; i < ob.size(); ++i) D[a][i] = basis[a][i] - ob[i];
    }
    CMat G(m, m), E(m, m);
    for (long a = 0; a < m; ++a)
        for (long b = 0; b <= a; ++b) {
            const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
            G(a, b) = winner(basis[ub], basis[ua], inner_weights);
            E(a, b) = winner(D[ub], D[ua], inner_weights);
            G(b, a) = std::conj(G(a, b));
            E(b, a) = std::conj(E(a, b));
        }
    Eigen::SelfAdjointEigenSolver<CMat> gs(G);
    const auto& ev = gs.eigenvalues();
    const double top = ev.maxCoeff();
    std::vector<long> keep;
    for (long i = 0; i < m; ++i)
        if (ev(i) > 1e-12 * top) keep.push_back(i);
    CMat Q(m, static_cast<long>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c)
        Q.col(static_cast<long>(c)) = gs.eigenvectors().col(keep[c]) / std::sqrt(ev(keep[c]));
    const CMat Er = Q.adjoint() * E * Q;
    Eigen::SelfAdjointEigenSolver<CMat> es(Er, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double power_distance_to_identity(const LinearMap& op, const LinearMap& adjoint, std::size_t dim,
                                  const std::vector<double>& inner_weights, int iterations, std::uint64_t seed) {
    Rng rng{seed};
    CVec x(dim);
    for (auto& v : x) v = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
    double est = 0.0;
    for (int it = 0; it < iterations; ++it) {
        const double xn = wnorm(x, inner_weights);
        for (auto& v : x) v /= xn;
        CVec y = op(x);
        for (std::size_t i = 0; i < dim; ++i) y[i] = x[i] - y[i];
        est = wnorm(y, inner_weights);
        CVec z = adjoint(y);
        for (std::size_t i = 0; i < dim; ++i) z[i] = y[i] - z[i];
        x = std::move(z);
        if (wnorm(x, inner_weights) == 0.0) break;
    }
    return est;
}

double sequence_norm(const CoefficientSequence& c, PNorm p) {
    CompensatedSum s;
    double mx = 0.0;
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        const double a = std::abs(c.values[i]) * (c.weights.empty() ? 1.0 : c.weights[i]);
        switch (p) {
            case PNorm::One: s.add(a); break;
            case PNorm::Two: s.add(a * a); break;
            case PNorm::Inf: mx = std::max(mx, a); break;
        }
    }
    if (p == PNorm::Inf) return mx;
    return p == PNorm::Two ? std::sqrt(s.value()) : s.value();
}

std::vector<double> node_weights(const PartitionOfUnity& pou, const WeightSpec& m) {
    std::vector<double> w(pou.size());
    for (std::size_t j = 0; j < pou.J(); ++j)
        for (std::size_t k = 0; k < pou.K(); ++k)
            w[pou.index(j, k)] = weight_m(m, pou.ball().centers[j], pou.freq().centers[k]);
    return w;
}

FrameBounds empirical_frame_bounds(const std::vector<double>& sequence_norms, const std::vector<double>& coorbit_norms) {
    if (sequence_norms.size() != coorbit_norms.size()) throw DomainError("empirical_frame_bounds: size mismatch");
    if (sequence_norms.size() < 2) throw DomainError("empirical_frame_bounds: need at least 2 signals");
    FrameBounds b;
    b.A = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sequence_norms.size(); ++i) {
        if (!(coorbit_norms[i] > 0.0)) {
            ++b.skipped;
            continue;
        }
        const double q = sequence_norms[i] / coorbit_norms[i];
        b.A = std::min(b.A, q);
        b.A_prime = std::max(b.A_prime, q);
        ++b.used;
    }
    if (b.used == 0) throw DomainError("empirical_frame_bounds: every signal has zero norm");
    return b;
}

SchurBounds kernel_schur_bounds(const CVec& K, const std::vector<double>& xi, const std::vector<double>& m) {
    const std::size_t P = xi.size();
    if (K.size() != P * P || m.size() != P) throw DomainError("kernel_schur_bounds: size mismatch");
    SchurBounds b;
    std::vector<CompensatedSum> col(P);
    for (std::size_t x = 0; x < P; ++x) {
        CompensatedSum row;
        for (std::size_t y = 0; y < P; ++y) {
            const double a = std::abs(K[x * P + y]) * m[x] / m[y];
            row.add(a * xi[y]);
            col[y].add(a * xi[x]);
        }
        b.row = std::max(b.row, row.value());
    }
    for (std::size_t y = 0; y < P; ++y) b.col = std::max(b.col, col[y].value());
    return b;
}

CVec apply_kernel(const CVec& K, const std::vector<double>& xi, const CVec& f) {
    const std::size_t P = xi.size();
    CVec out(P);
    for (std::size_t x = 0; x < P; ++x) {
        CompensatedSumC s;
        for (std::size_t y = 0; y < P; ++y) s.add(K[x * P + y] * f[y] * xi[y]);
        out[x] = s.value();
    }
    return out;
}

double weighted_lp(const CVec& f, const std::vector<double>& xi, const std::vector<double>& m, PNorm p) {
    CompensatedSum s;
    double mx = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double a = std::abs(f[i]) * m[i];
        switch (p) {
            case PNorm::One: s.add(a * xi[i]); break;
            case PNorm::Two: s.add(a * a * xi[i]); break;
            case PNorm::Inf: mx = std::max(mx, a); break;
        }
    }
    if (p == PNorm::Inf) return mx;
    return p == PNorm::Two ? std::sqrt(s.value()) : s.value();
}

double kernel_l2_norm(const CVec& K, const std::vector<double>& xi, const std::vector<double>& m) {
    const long P = static_cast<long>(xi.size());
    CMat M(P, P);
    for (long x = 0; x < P; ++x)
        for (long y = 0; y < P; ++y) {
            const auto ux = static_cast<std::size_t>(x), uy = static_cast<std::size_t>(y);
            M(x, y) = std::sqrt(xi[ux]) * m[ux] * K[ux * xi.size() + uy] / m[uy] * std::sqrt(xi[uy]);
        }
    Eigen::BDCSVD<CMat> svd(M);
    return svd.singularValues()(0);
}

void write_csv(std::ostream& os, const CoefficientSequence& c, const PartitionOfUnity& pou) {
    csv::Writer w(os, {"j", "k", "w_re", "w_im", "λ", "ζ_angle", "weight", "re", "im"});
    for (std::size_t j = 0; j < pou.J(); ++j)
        for (std::size_t k = 0; k < pou.K(); ++k) {
            const std::size_t i = pou.index(j, k);
            const cplx z = pou.ball().centers[j];
            w.field(static_cast<long long>(j)).field(static_cast<long long>(k));
            w.field(z.real()).field(z.imag()).field(pou.freq().centers[k]).field(pou.zeta0());
            w.field(c.weights.empty() ? 1.0 : c.weights[i]);
            w.field(c.values[i].real()).field(c.values[i].imag());
            w.end_row();
        }
}

}  // namespace hyperball
