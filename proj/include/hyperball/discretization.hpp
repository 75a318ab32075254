// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#pragma once

#include <memory>
#include <vector>

#include "hyperball/geometry.hpp"
#include "json.hpp"

namespace hyperball {

struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
};

// Nodes and weights on [a, b], ascending.
GaussLegendre gauss_legendre(int count, double a = -1.0, double b = 1.0);

struct BallGridSpec {
    double T_max = 5.0;
    int N_t = 200;
    int N_theta = 128;
};

struct SpectralGridSpec {
    double Lambda = 40.0;
    int N_lambda = 2049;
    int N_zeta = 128;
};

void to_json(nlohmann::json& j, const BallGridSpec& s);
void from_json(const nlohmann::json& j, BallGridSpec& s);
void to_json(nlohmann::json& j, const SpectralGridSpec& s);
void from_json(const nlohmann::json& j, SpectralGridSpec& s);

// Polar grid of the disk (n = 1): r = tanh t, Gauss-Legendre in t on (0, T_max),
// N_theta equispaced angles. Node index = ring * N_theta + angle.
class BallGrid {
public:
    static std::shared_ptr<const BallGrid> build(double T_max, int N_t, int N_theta);
    static std::shared_ptr<const BallGrid> build(const BallGridSpec& s) { return build(s.T_max, s.N_t, s.N_theta); }
    // Same layout without the T_max >= 1 floor; used for evaluation regions and exact sub-disks.
    static std::shared_ptr<const BallGrid> build_region(double T_max, int N_t, int N_theta);

    BallGridSpec spec() const { return spec_; }
    int n() const { return 1; }
    std::size_t size() const { return nodes_.size(); }
    int rings() const { return spec_.N_t; }
    int angles() const { return spec_.N_theta; }

    cplx node(std::size_t i) const { return nodes_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<cplx>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    // per ring: t, r, and the radial weight so that sum_i radial_weight_i g(r_i) = int g dmu for radial g
    const std::vector<double>& t() const { return t_; }
    const std::vector<double>& r() const { return r_; }
    const std::vector<double>& radial_weight() const { return radial_w_; }
    double angle(int j) const;
    double radius() const { return r_.empty() ? 0.0 : std::tanh(spec_.T_max); }

private:
    BallGridSpec spec_;
    std::vector<double> t_, r_, radial_w_;
    std::vector<cplx> nodes_;
    std::vector<double> weights_;
};

enum class SpectralMeasure { Nu, NuTilde };

// Uniform lambda nodes on [-Lambda, Lambda] with trapezoid weights; N_zeta equispaced circle points.
// Node index = k * N_zeta + j.
class SpectralGrid {
public:
    static std::shared_ptr<const SpectralGrid> build(double Lambda, int N_lambda, int N_zeta);
    static std::shared_ptr<const SpectralGrid> build(const SpectralGridSpec& s) {
        return build(s.Lambda, s.N_lambda, s.N_zeta);
    }
    // Same layout without the Lambda >= 5, N_lambda >= 64 floor; phase-space grids for dense kernels.
    static std::shared_ptr<const SpectralGrid> build_coarse(double Lambda, int N_lambda, int N_zeta);
    static std::shared_ptr<const SpectralGrid> build_coarse(const SpectralGridSpec& s) {
        return build_coarse(s.Lambda, s.N_lambda, s.N_zeta);
    }

    SpectralGridSpec spec() const { return spec_; }
    int n() const { return 1; }
    std::size_t size() const { return static_cast<std::size_t>(spec_.N_lambda) * spec_.N_zeta; }
    int n_lambda() const { return spec_.N_lambda; }
    int n_zeta() const { return spec_.N_zeta; }
    double dlambda() const { return dlambda_; }

    const std::vector<double>& lambda() const { return lambda_; }
    const std::vector<double>& zeta_angle() const { return zeta_; }
    double sigma_weight(int j) const { return sigma_w_[j]; }
    // lambda-part of the nu / nu-tilde weights (density * dlambda * trapezoid)
    const std::vector<double>& nu_lambda() const { return nu_l_; }
    const std::vector<double>& nut_lambda() const { return nut_l_; }
    double weight(std::size_t idx, SpectralMeasure m) const;
    cplx zeta(int j) const { return std::polar(1.0, zeta_[j]); }

    // index of lambda = 0 when N_lambda is odd, -1 otherwise
    int zero_index() const { return spec_.N_lambda % 2 == 1 ? spec_.N_lambda / 2 : -1; }

private:
    SpectralGridSpec spec_;
    double dlambda_ = 0.0;
    std::vector<double> lambda_, zeta_, sigma_w_, nu_l_, nut_l_;
};

// Quadrature on S (n = 1: circle trapezoid; n = 2: Gauss in |zeta_1|^2 x two trapezoids).
struct SphereGrid {
    int n = 1;
    std::vector<CVec> points;
    std::vector<double> weights;
};
SphereGrid build_sphere_grid(int n, int N_gauss, int N_angle);

struct SampledBallFunction {
    std::shared_ptr<const BallGrid> grid;
    CVec values;

    SampledBallFunction() = default;
    explicit SampledBallFunction(std::shared_ptr<const BallGrid> g);
    SampledBallFunction(std::shared_ptr<const BallGrid> g, CVec v);
    template <class F>
    static SampledBallFunction sample(std::shared_ptr<const BallGrid> g, F&& f) {
        SampledBallFunction out(g);
        for (std::size_t i = 0; i < g->size(); ++i) out.values[i] = f(g->node(i));
        return out;
    }
};

struct SpectralFunction {
    std::shared_ptr<const SpectralGrid> grid;
    CVec values;

    SpectralFunction() = default;
    explicit SpectralFunction(std::shared_ptr<const SpectralGrid> g);
    SpectralFunction(std::shared_ptr<const SpectralGrid> g, CVec v);
};

cplx integrate_ball(const SampledBallFunction& f);
cplx integrate_spectral(const SpectralFunction& F, SpectralMeasure m = SpectralMeasure::Nu);
// <f, g> = int f conj(g)
cplx inner_ball(const SampledBallFunction& f, const SampledBallFunction& g);
cplx inner_spectral(const SpectralFunction& F, const SpectralFunction& G, SpectralMeasure m = SpectralMeasure::Nu);
double norm_ball(const SampledBallFunction& f);
double norm_spectral(const SpectralFunction& F, SpectralMeasure m = SpectralMeasure::Nu);

// mu({|z| <= rho}) for n = 1
double ball_measure_closed_form(double rho);

}  // namespace hyperball
