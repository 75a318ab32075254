// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#include "hyperball/voice.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "hyperball/csv.hpp"
#include "hyperball/kernels.hpp"
#include "hyperball/summation.hpp"

namespace hyperball {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kReachAmp = 1e-16;

// int_0^T |g(tanh t)|^2 sinh(2t) dt style radial integrals
cplx radial_integral(const std::function<cplx(double)>& h, double T) {
    const GaussLegendre gl = gauss_legendre(600, 0.0, T);
    CompensatedSumC s;
    for (std::size_t i = 0; i < gl.x.size(); ++i) s.add(gl.w[i] * std::sinh(2.0 * gl.x[i]) * h(std::tanh(gl.x[i])));
    return s.value();
}

Window finish(RadialProfile p, double reach, double kappa) {
    Window w;
    w.profile = std::move(p);
    w.reach_t = reach;
    w.kappa_exponent = kappa;
    const auto& g = w.profile;
    w.norm = std::sqrt(radial_integral([&](double r) { return cplx(std::norm(g(r))); }, reach).real());
    if (!(w.norm > 0.0) || !std::isfinite(w.norm)) throw DomainError("window: L2 norm must be finite and positive");
    return w;
}

inline double rho_cut(const Window& psi) { return std::tanh(psi.reach_t); }

}  // namespace

Window gaussian_window(double beta) {
    if (!(beta > 0.0)) throw DomainError("gaussian_window: beta must be > 0");
    RadialProfile p;
    p.name = "gaussian";
    p.g = [beta](double rho) {
        const double t = std::atanh(rho);
        return cplx(std::exp(-beta * t * t));
    };
    return finish(std::move(p), std::sqrt(-std::log(kReachAmp) / beta), std::numeric_limits<double>::infinity());
}

Window polynomial_window(double sigma) {
    if (!(sigma > 0.0)) throw DomainError("polynomial_window: sigma must be > 0");
    RadialProfile p;
    p.name = "polynomial";
    p.g = [sigma](double rho) { return cplx(std::pow(1.0 - rho * rho, sigma)); };
    // (1-r^2)^sigma = cosh(t)^(-2 sigma) < 4^sigma e^{-2 sigma t}
    const double reach = (-std::log(kReachAmp) + sigma * std::log(4.0)) / (2.0 * sigma);
    return finish(std::move(p), std::min(reach, 8.0), sigma);
}

Window scaled(const Window& w, double factor) {
    Window out = w;
    auto g = w.profile.g;
    out.profile.g = [g, factor](double rho) { return factor * g(rho); };
    out.norm = std::abs(factor) * w.norm;
    return out;
}

Window normalized(const Window& w) { return scaled(w, 1.0 / w.norm); }

cplx window_inner(const Window& a, const Window& b) {
    const double T = std::max(a.reach_t, b.reach_t);
    return radial_integral([&](double r) { return a(r) * std::conj(b(r)); }, T);
}

void to_json(nlohmann::json& j, const TranslationGridSpec& s) {
    j = nlohmann::json{{"T_max", s.T_max}, {"N_t", s.N_t}, {"arc", s.arc}, {"min_angles", s.min_angles}};
}

void from_json(const nlohmann::json& j, TranslationGridSpec& s) {
    j.at("T_max").get_to(s.T_max);
    j.at("N_t").get_to(s.N_t);
    j.at("arc").get_to(s.arc);
    j.at("min_angles").get_to(s.min_angles);
}

std::shared_ptr<const TranslationGrid> TranslationGrid::build(const TranslationGridSpec& s) {
    if (!(s.T_max > 0.0 && s.T_max <= 8.0)) throw DomainError("translation grid: T_max must lie in (0, 8]");
    if (s.N_t < 1) throw DomainError("translation grid: N_t must be >= 1");
    if (!(s.arc > 0.0)) throw DomainError("translation grid: arc must be > 0");
    if (s.min_angles < 1) throw DomainError("translation grid: min_angles must be >= 1");
    auto g = std::make_shared<TranslationGrid>();
    g->spec_ = s;
    const GaussLegendre gl = gauss_legendre(s.N_t, 0.0, s.T_max);
    for (int i = 0; i < s.N_t; ++i) {
        const double t = gl.x[i];
        const int m = std::max(s.min_angles, static_cast<int>(std::ceil(2.0 * kPi * std::sinh(t) / s.arc)));
        const double r = std::tanh(t);
        const double off = (i % 2) ? kPi / m : 0.0;
        for (int k = 0; k < m; ++k) {
            g->nodes_.push_back(std::polar(r, off + 2.0 * kPi * k / m));
            g->weights_.push_back(gl.w[i] * std::sinh(2.0 * t) / m);
        }
    }
    return g;
}

std::shared_ptr<const TranslationGrid> TranslationGrid::from_nodes(std::vector<cplx> nodes, std::vector<double> weights) {
    if (nodes.size() != weights.size()) throw DomainError("translation grid: node/weight size mismatch");
    for (cplx z : nodes)
        if (std::abs(z) >= 1.0 - kBoundaryEps) throw DomainError("translation grid: node outside the ball");
    auto g = std::make_shared<TranslationGrid>();
    g->spec_.N_t = 0;
    g->nodes_ = std::move(nodes);
    g->weights_ = std::move(weights);
    return g;
}

double weight_m(const WeightSpec& m, cplx w, double lambda) {
    if (m.s == 0.0 && m.r == 0.0) return 1.0;
    return weight_kappa_x(m.s, std::norm(w)) * weight_v(m.r, lambda);
}

cplx rho_value(const PhasePoint& X, const Window& psi, cplx z) {
    const cplx w = X.w[0];
    const double rho = std::abs(disk::mobius(w, z));
    if (rho >= rho_cut(psi)) return 0.0;
    const double base = disk::poisson_base(z, X.zeta[0]);
    // base^{(1 + i lambda)/2}
    return std::sqrt(base) * std::polar(1.0, 0.5 * X.lambda * std::log(base)) * psi(rho);
}

SampledBallFunction rho_apply(const PhasePoint& X, const Window& psi, std::shared_ptr<const BallGrid> grid) {
    SampledBallFunction out(grid);
    CompensatedSum mass;
    const cplx w = X.w[0];
    for (std::size_t i = 0; i < grid->size(); ++i) {
        const cplx z = grid->node(i);
        out.values[i] = rho_value(X, psi, z);
        mass.add(std::norm(psi(std::abs(disk::mobius(w, z)))) * grid->weight(i));
    }
    const double deficit = 1.0 - mass.value() / (psi.norm * psi.norm);
    if (deficit > 1e-6) {
        std::ostringstream msg;
        msg << "rho_apply: translated window loses " << deficit << " of its mass outside the grid (|w| = " << std::abs(w)
            << ")";
        throw SupportOverflow(msg.str());
    }
    return out;
}

namespace {

struct ActiveSet {
    std::vector<cplx> z;
    CVec fw;  // f * weight
};

ActiveSet active_of(const SampledBallFunction& f) {
    ActiveSet a;
    for (std::size_t i = 0; i < f.grid->size(); ++i) {
        if (f.values[i] == cplx(0.0)) continue;
        a.z.push_back(f.grid->node(i));
        a.fw.push_back(f.values[i] * f.grid->weight(i));
    }
    return a;
}

template <bool Reference>
PhaseFunction voice_forward_impl(const SampledBallFunction& f, const Window& psi, std::shared_ptr<const PhaseGrid> pg) {
    PhaseFunction V(pg);
    const ActiveSet act = active_of(f);
    const TranslationGrid& tg = pg->translations();
    const SpectralGrid& sg = pg->spectral();
    const std::size_t S = sg.size();
    const double cut = rho_cut(psi);
    const long nw = static_cast<long>(tg.size());
    const int team = Reference ? 1 : kernels::workers();

#pragma omp parallel for schedule(dynamic, 1) num_threads(team) if (team > 1)
    for (long iw = 0; iw < nw; ++iw) {
        const cplx w = tg.node(static_cast<std::size_t>(iw));
        std::vector<cplx> zs;
        CVec cs;
        zs.reserve(act.z.size());
        cs.reserve(act.z.size());
        for (std::size_t i = 0; i < act.z.size(); ++i) {
            const double rho = std::abs(disk::mobius(w, act.z[i]));
            if (rho >= cut) continue;
            const cplx p = psi(rho);
            if (p == cplx(0.0)) continue;
            zs.push_back(act.z[i]);
            cs.push_back(act.fw[i] * std::conj(p));
        }
        cplx* out = V.values.data() + static_cast<std::size_t>(iw) * S;
        if (zs.empty()) {
            std::fill(out, out + S, cplx(0.0));
            continue;
        }
        if (Reference)
            kernels::forward_reference(zs.data(), cs.data(), zs.size(), sg, out);
        else
            kernels::forward(zs.data(), cs.data(), zs.size(), sg, out);
    }
    return V;
}

template <bool Reference>
SampledBallFunction voice_adjoint_impl(const PhaseFunction& F, const Window& psi, std::shared_ptr<const BallGrid> out) {
    const PhaseGrid& pg = *F.grid;
    const TranslationGrid& tg = pg.translations();
    const SpectralGrid& sg = pg.spectral();
    const std::size_t S = sg.size();
    const double cut = rho_cut(psi);
    std::vector<CompensatedSumC> acc(out->size());
    CVec Fw(S), tmp;
    std::vector<cplx> zs;
    std::vector<std::size_t> idx;
    std::vector<cplx> win;
    for (std::size_t iw = 0; iw < tg.size(); ++iw) {
        const cplx w = tg.node(iw);
        bool any = false;
        for (std::size_t b = 0; b < S; ++b) {
            Fw[b] = F.values[iw * S + b] * (tg.weight(iw) * sg.weight(b, SpectralMeasure::Nu));
            any = any || Fw[b] != cplx(0.0);
        }
        if (!any) continue;
        zs.clear();
        idx.clear();
        win.clear();
        for (std::size_t i = 0; i < out->size(); ++i) {
            const double rho = std::abs(disk::mobius(w, out->node(i)));
            if (rho >= cut) continue;
            const cplx p = psi(rho);
            if (p == cplx(0.0)) continue;
            zs.push_back(out->node(i));
            idx.push_back(i);
            win.push_back(p);
        }
        if (zs.empty()) continue;
        tmp.assign(zs.size(), cplx(0.0));
        if (Reference)
            kernels::inverse_reference(Fw.data(), sg, zs.data(), zs.size(), tmp.data());
        else
            kernels::inverse(Fw.data(), sg, zs.data(), zs.size(), tmp.data());
        for (std::size_t a = 0; a < zs.size(); ++a) acc[idx[a]].add(tmp[a] * win[a]);
    }
    SampledBallFunction g(out);
    for (std::size_t i = 0; i < out->size(); ++i) g.values[i] = acc[i].value();
    return g;
}

}  // namespace

PhaseFunction voice_forward(const SampledBallFunction& f, const Window& psi, std::shared_ptr<const PhaseGrid> pg) {
    return voice_forward_impl<false>(f, psi, std::move(pg));
}

PhaseFunction voice_forward_reference(const SampledBallFunction& f, const Window& psi,
                                      std::shared_ptr<const PhaseGrid> pg) {
    return voice_forward_impl<true>(f, psi, std::move(pg));
}

cplx voice_at(const SampledBallFunction& f, const Window& psi, const PhasePoint& X) {
    // <f, rho(X) psi>
    CompensatedSumC s;
    for (std::size_t i = 0; i < f.grid->size(); ++i) {
        if (f.values[i] == cplx(0.0)) continue;
        s.add(f.values[i] * f.grid->weight(i) * std::conj(rho_value(X, psi, f.grid->node(i))));
    }
    return s.value();
}

SampledBallFunction voice_adjoint(const PhaseFunction& F, const Window& psi, std::shared_ptr<const BallGrid> out) {
    return voice_adjoint_impl<false>(F, psi, std::move(out));
}

SampledBallFunction voice_adjoint_reference(const PhaseFunction& F, const Window& psi,
                                            std::shared_ptr<const BallGrid> out) {
    return voice_adjoint_impl<true>(F, psi, std::move(out));
}

SampledBallFunction voice_invert(const PhaseFunction& Vf, const Window& gamma, const Window& psi,
                                 std::shared_ptr<const BallGrid> out) {
    const cplx gp = window_inner(gamma, psi);
    if (std::abs(gp) < 1e-8 * gamma.norm * psi.norm)
        throw DomainError("voice_invert: windows are (numerically) orthogonal, <gamma, psi> ~ 0");
    SampledBallFunction g = voice_adjoint(Vf, gamma, std::move(out));
    for (cplx& v : g.values) v /= gp;
    return g;
}

cplx reproducing_kernel(const PhasePoint& X, const PhasePoint& Y, const Window& psi, const BallGrid& grid) {
    CompensatedSumC s;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cplx z = grid.node(i);
        const cplx a = rho_value(X, psi, z);
        if (a == cplx(0.0)) continue;
        const cplx b = rho_value(Y, psi, z);
        if (b == cplx(0.0)) continue;
        s.add(a * std::conj(b) * grid.weight(i));
    }
    return s.value();
}

CVec reproducing_kernel_matrix(const Window& psi, const PhaseGrid& pg, const BallGrid& grid) {
    const std::size_t P = pg.size();
    if (static_cast<double>(P) * static_cast<double>(P) > 4e8)
        throw DomainError("reproducing_kernel_matrix: phase grid too large for a dense kernel (> 4e8 entries)");
    using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
    const long np = static_cast<long>(P);
    // rows of the ball grid touched by some atom
    std::vector<std::size_t> rows;
    const double cut = rho_cut(psi);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t iw = 0; iw < pg.translations().size(); ++iw) {
            if (std::abs(disk::mobius(pg.translations().node(iw), grid.node(i))) < cut) {
                rows.push_back(i);
                break;
            }
        }
    }
    std::vector<PhasePoint> pts(P);
    for (std::size_t p = 0; p < P; ++p) pts[p] = pg.point(p);
    Mat G = Mat::Zero(np, np);
    const std::size_t block = 1024;
    for (std::size_t r0 = 0; r0 < rows.size(); r0 += block) {
        const long nb = static_cast<long>(std::min(block, rows.size() - r0));
        Mat A(nb, np);
#pragma omp parallel for schedule(static) num_threads(kernels::workers())
        for (long p = 0; p < np; ++p)
            for (long a = 0; a < nb; ++a) {
                const std::size_t i = rows[r0 + static_cast<std::size_t>(a)];
                A(a, p) = rho_value(pts[static_cast<std::size_t>(p)], psi, grid.node(i)) * std::sqrt(grid.weight(i));
            }
        G.noalias() += A.adjoint() * A;
    }
    // G(p,q) = <rho(X_q) psi, rho(X_p) psi> = R(X_q, X_p)
    CVec R(P * P);
    for (long p = 0; p < np; ++p)
        for (long q = 0; q < np; ++q) R[static_cast<std::size_t>(p) * P + static_cast<std::size_t>(q)] = G(q, p);
    return R;
}

PNorm parse_pnorm(const std::string& s) {
    if (s == "1") return PNorm::One;
    if (s == "2") return PNorm::Two;
    if (s == "inf" || s == "Inf" || s == "infinity") return PNorm::Inf;
    throw DomainError("p must be one of 1, 2, inf (got '" + s + "')");
}

double coorbit_norm(const PhaseFunction& F, PNorm p, const WeightSpec& m, SpectralMeasure measure) {
    const PhaseGrid& pg = *F.grid;
    CompensatedSum s;
    double mx = 0.0;
    for (std::size_t i = 0; i < pg.size(); ++i) {
        const double a = std::abs(F.values[i]) * weight_m(m, pg.w(i), pg.lambda(i));
        switch (p) {
            case PNorm::One: s.add(a * pg.weight(i, measure)); break;
            case PNorm::Two: s.add(a * a * pg.weight(i, measure)); break;
            case PNorm::Inf: mx = std::max(mx, a); break;
        }
    }
    if (p == PNorm::Inf) return mx;
    return p == PNorm::Two ? std::sqrt(s.value()) : s.value();
}

Admissibility admissibility_constant(const Window& psi, const WeightSpec& m, const PhaseGrid& pg, const BallGrid& grid) {
    const CVec R = reproducing_kernel_matrix(psi, pg, grid);
    const std::size_t P = pg.size();
    std::vector<double> mw(P), xi(P);
    for (std::size_t i = 0; i < P; ++i) {
        mw[i] = weight_m(m, pg.w(i), pg.lambda(i));
        xi[i] = pg.weight(i);
    }
    Admissibility out;
    std::vector<CompensatedSum> col(P);
    for (std::size_t x = 0; x < P; ++x) {
        CompensatedSum row;
        for (std::size_t y = 0; y < P; ++y) {
            const double a = std::abs(R[x * P + y]);
            row.add(a * mw[y] / mw[x] * xi[y]);
            col[y].add(a * mw[y] / mw[x] * xi[x]);
        }
        out.row = std::max(out.row, row.value());
        out.growth = std::max(out.growth, R[x * P + x].real() / mw[x]);
    }
    for (std::size_t y = 0; y < P; ++y) out.col = std::max(out.col, col[y].value());
    return out;
}

void write_csv(std::ostream& os, const PhaseFunction& F) {
    const PhaseGrid& pg = *F.grid;
    csv::Writer w(os, {"w_re", "w_im", "λ", "ζ_angle", "ξ_weight", "re", "im"});
    for (std::size_t i = 0; i < pg.size(); ++i) {
        const cplx z = pg.w(i);
        w.field(z.real()).field(z.imag()).field(pg.lambda(i)).field(pg.zeta_angle(i)).field(pg.weight(i));
        w.field(F.values[i].real()).field(F.values[i].imag());
        w.end_row();
    }
}

}  // namespace hyperball
