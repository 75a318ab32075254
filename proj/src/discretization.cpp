// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#include "hyperball/discretization.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperball/special_functions.hpp"
#include "hyperball/summation.hpp"

namespace hyperball {

namespace {

constexpr double kPi = std::numbers::pi;

void range_error(const std::string& what) { throw DomainError(what); }

}  // namespace

GaussLegendre gauss_legendre(int count, double a, double b) {
    if (count < 1) range_error("gauss_legendre: count must be positive");
    GaussLegendre out;
    out.x.resize(count);
    out.w.resize(count);
    const int m = (count + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (count + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= count; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = count * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= count; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = count * (z * p0 - p1) / (z * z - 1.0);
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        out.x[i] = -z;
        out.x[count - 1 - i] = z;
        out.w[i] = w;
        out.w[count - 1 - i] = w;
    }
    const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
    for (int i = 0; i < count; ++i) {
        out.x[i] = mid + half * out.x[i];
        out.w[i] *= half;
    }
    return out;
}

void to_json(nlohmann::json& j, const BallGridSpec& s) {
    j = nlohmann::json{{"T_max", s.T_max}, {"N_t", s.N_t}, {"N_theta", s.N_theta}};
}

void from_json(const nlohmann::json& j, BallGridSpec& s) {
    j.at("T_max").get_to(s.T_max);
    j.at("N_t").get_to(s.N_t);
    j.at("N_theta").get_to(s.N_theta);
}

void to_json(nlohmann::json& j, const SpectralGridSpec& s) {
    j = nlohmann::json{{"Lambda", s.Lambda}, {"N_lambda", s.N_lambda}, {"N_zeta", s.N_zeta}};
}

void from_json(const nlohmann::json& j, SpectralGridSpec& s) {
    j.at("Lambda").get_to(s.Lambda);
    j.at("N_lambda").get_to(s.N_lambda);
    j.at("N_zeta").get_to(s.N_zeta);
}

std::shared_ptr<const BallGrid> BallGrid::build(double T_max, int N_t, int N_theta) {
    if (!(T_max >= 1.0 && T_max <= 8.0)) range_error("build_ball_grid: T_max must lie in [1, 8]");
    if (N_t < 16) range_error("build_ball_grid: N_t must be >= 16");
    if (N_theta < 16) range_error("build_ball_grid: N_theta must be >= 16");
    return build_region(T_max, N_t, N_theta);
}

std::shared_ptr<const BallGrid> BallGrid::build_region(double T_max, int N_t, int N_theta) {
    if (!(T_max > 0.0 && T_max <= 8.0)) range_error("BallGrid: T_max must lie in (0, 8]");
    if (N_t < 1 || N_theta < 1) range_error("BallGrid: node counts must be positive");
    auto g = std::make_shared<BallGrid>();
    g->spec_ = {T_max, N_t, N_theta};
    const GaussLegendre gl = gauss_legendre(N_t, 0.0, T_max);
    g->t_ = gl.x;
    g->r_.resize(N_t);
    g->radial_w_.resize(N_t);
    for (int i = 0; i < N_t; ++i) {
        g->r_[i] = std::tanh(gl.x[i]);
        // dmu = sinh(2t) dt dsigma for n = 1
        g->radial_w_[i] = gl.w[i] * std::sinh(2.0 * gl.x[i]);
    }
    g->nodes_.resize(static_cast<std::size_t>(N_t) * N_theta);
    g->weights_.resize(g->nodes_.size());
    for (int i = 0; i < N_t; ++i) {
        for (int j = 0; j < N_theta; ++j) {
            const std::size_t idx = static_cast<std::size_t>(i) * N_theta + j;
            g->nodes_[idx] = std::polar(g->r_[i], 2.0 * kPi * j / N_theta);
            g->weights_[idx] = g->radial_w_[i] / N_theta;
        }
    }
    return g;
}

double BallGrid::angle(int j) const { return 2.0 * kPi * j / spec_.N_theta; }

std::shared_ptr<const SpectralGrid> SpectralGrid::build(double Lambda, int N_lambda, int N_zeta) {
    if (!(Lambda >= 5.0)) range_error("build_spectral_grid: Lambda must be >= 5");
    if (N_lambda < 64) range_error("build_spectral_grid: N_lambda must be >= 64");
    return build_coarse(Lambda, N_lambda, N_zeta);
}

std::shared_ptr<const SpectralGrid> SpectralGrid::build_coarse(double Lambda, int N_lambda, int N_zeta) {
    if (!(Lambda > 0.0)) range_error("SpectralGrid: Lambda must be > 0");
    if (N_lambda < 2) range_error("SpectralGrid: N_lambda must be >= 2");
    if (N_zeta < 1) range_error("SpectralGrid: N_zeta must be >= 1");
    auto g = std::make_shared<SpectralGrid>();
    g->spec_ = {Lambda, N_lambda, N_zeta};
    g->dlambda_ = 2.0 * Lambda / (N_lambda - 1);
    g->lambda_.resize(N_lambda);
    g->nu_l_.resize(N_lambda);
    g->nut_l_.resize(N_lambda);
    for (int k = 0; k < N_lambda; ++k) {
        // symmetric construction keeps lambda_k = -lambda_{N-1-k} exactly
        const int m = N_lambda - 1;
        const double lam = (2 * k == m) ? 0.0 : Lambda * (2.0 * k - m) / m;
        g->lambda_[k] = lam;
        const double trap = (k == 0 || k == m) ? 0.5 : 1.0;
        g->nu_l_[k] = plancherel_density(lam, 1) * g->dlambda_ * trap;
        g->nut_l_[k] = weight_v(1.0, lam) * g->dlambda_ * trap;
    }
    g->zeta_.resize(N_zeta);
    g->sigma_w_.assign(N_zeta, 1.0 / N_zeta);
    for (int j = 0; j < N_zeta; ++j) g->zeta_[j] = 2.0 * kPi * j / N_zeta;
    return g;
}

double SpectralGrid::weight(std::size_t idx, SpectralMeasure m) const {
    const std::size_t k = idx / spec_.N_zeta, j = idx % spec_.N_zeta;
    return (m == SpectralMeasure::Nu ? nu_l_[k] : nut_l_[k]) * sigma_w_[j];
}

SphereGrid build_sphere_grid(int n, int N_gauss, int N_angle) {
    SphereGrid s;
    s.n = n;
    if (n == 1) {
        for (int j = 0; j < N_angle; ++j) {
            s.points.push_back(CVec{std::polar(1.0, 2.0 * kPi * j / N_angle)});
            s.weights.push_back(1.0 / N_angle);
        }
        return s;
    }
    if (n != 2) range_error("build_sphere_grid: only n = 1, 2 supported");
    // |zeta_1|^2 is uniform on [0,1] under sigma on S^3
    const GaussLegendre gl = gauss_legendre(N_gauss, 0.0, 1.0);
    for (int i = 0; i < N_gauss; ++i) {
        const double a = std::sqrt(gl.x[i]), b = std::sqrt(1.0 - gl.x[i]);
        for (int p = 0; p < N_angle; ++p) {
            for (int q = 0; q < N_angle; ++q) {
                s.points.push_back(CVec{std::polar(a, 2.0 * kPi * p / N_angle), std::polar(b, 2.0 * kPi * q / N_angle)});
                s.weights.push_back(gl.w[i] / (static_cast<double>(N_angle) * N_angle));
            }
        }
    }
    return s;
}

SampledBallFunction::SampledBallFunction(std::shared_ptr<const BallGrid> g) : grid(std::move(g)) {
    values.assign(grid->size(), cplx(0.0));
}

SampledBallFunction::SampledBallFunction(std::shared_ptr<const BallGrid> g, CVec v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->size()) throw DomainError("SampledBallFunction: value count does not match grid");
    for (const cplx& c : values)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw DomainError("SampledBallFunction: non-finite value");
}

SpectralFunction::SpectralFunction(std::shared_ptr<const SpectralGrid> g) : grid(std::move(g)) {
    values.assign(grid->size(), cplx(0.0));
}

SpectralFunction::SpectralFunction(std::shared_ptr<const SpectralGrid> g, CVec v)
    : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->size()) throw DomainError("SpectralFunction: value count does not match grid");
}

cplx integrate_ball(const SampledBallFunction& f) {
    CompensatedSumC s;
    for (std::size_t i = 0; i < f.values.size(); ++i) s.add(f.values[i] * f.grid->weight(i));
    return s.value();
}

cplx integrate_spectral(const SpectralFunction& F, SpectralMeasure m) {
    CompensatedSumC s;
    for (std::size_t i = 0; i < F.values.size(); ++i) s.add(F.values[i] * F.grid->weight(i, m));
    return s.value();
}

cplx inner_ball(const SampledBallFunction& f, const SampledBallFunction& g) {
    if (f.grid != g.grid) throw DomainError("inner_ball: grid mismatch");
    CompensatedSumC s;
    for (std::size_t i = 0; i < f.values.size(); ++i) s.add(f.values[i] * std::conj(g.values[i]) * f.grid->weight(i));
    return s.value();
}

cplx inner_spectral(const SpectralFunction& F, const SpectralFunction& G, SpectralMeasure m) {
    if (F.grid != G.grid) throw DomainError("inner_spectral: grid mismatch");
    CompensatedSumC s;
    for (std::size_t i = 0; i < F.values.size(); ++i)
        s.add(F.values[i] * std::conj(G.values[i]) * F.grid->weight(i, m));
    return s.value();
}

double norm_ball(const SampledBallFunction& f) { return std::sqrt(inner_ball(f, f).real()); }

double norm_spectral(const SpectralFunction& F, SpectralMeasure m) { return std::sqrt(inner_spectral(F, F, m).real()); }

double ball_measure_closed_form(double rho) { return rho * rho / (1.0 - rho * rho); }

}  // namespace hyperball
