// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#pragma once

#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hyperball/discretization.hpp"
#include "hyperball/helgason.hpp"
#include "hyperball/special_functions.hpp"

namespace hyperball {

class SupportOverflow : public DomainError {
public:
    using DomainError::DomainError;
};

// Radial window psi(z) = profile(|z|), n = 1.
struct Window {
    RadialProfile profile;
    double norm = 0.0;  // L2(mu)
    // |psi(z)| ~ (1-|z|^2)^kappa_exponent near the boundary; infinity for super-polynomial decay
    double kappa_exponent = std::numeric_limits<double>::infinity();
    // hyperbolic radius beyond which |psi| < 1e-16 max|psi|
    double reach_t = 0.0;

    cplx operator()(double rho) const { return profile(rho); }
    cplx at(cplx z) const { return profile(std::abs(z)); }
};

// exp(-beta d(o,z)^2)
Window gaussian_window(double beta = 4.0);
// (1 - |z|^2)^sigma
Window polynomial_window(double sigma = 4.0);
Window scaled(const Window& w, double factor);
Window normalized(const Window& w);
// int psi1 conj(psi2) dmu by radial Gauss-Legendre
cplx window_inner(const Window& a, const Window& b);

struct PhasePoint {
    BallPoint w;
    double lambda = 0.0;
    SpherePoint zeta;

    static PhasePoint make(cplx w, double lambda, double zeta_angle) {
        return {BallPoint::scalar(w), lambda, SpherePoint::angle(zeta_angle)};
    }
};

struct TranslationGridSpec {
    double T_max = 2.5;  // hyperbolic radius of the outermost ring region
    int N_t = 14;        // Gauss-Legendre rings in t
    double arc = 0.35;   // target hyperbolic arc length between neighbours on a ring
    int min_angles = 6;
};
void to_json(nlohmann::json& j, const TranslationGridSpec& s);
void from_json(const nlohmann::json& j, TranslationGridSpec& s);

// Hyperbolic-polar node set for the spatial part of phase space: rings at Gauss-Legendre radii,
// ceil(2 pi sinh(t) / arc) equispaced points per ring, mu-weights.
class TranslationGrid {
public:
    static std::shared_ptr<const TranslationGrid> build(const TranslationGridSpec& s);
    // Explicit nodes and mu-weights (lattices from the frame module, tests).
    static std::shared_ptr<const TranslationGrid> from_nodes(std::vector<cplx> nodes, std::vector<double> weights);

    std::size_t size() const { return nodes_.size(); }
    cplx node(std::size_t i) const { return nodes_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<cplx>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    TranslationGridSpec spec() const { return spec_; }

private:
    TranslationGridSpec spec_;
    std::vector<cplx> nodes_;
    std::vector<double> weights_;
};

// Product of translation nodes and a spectral grid. Index = w_index * spectral.size() + spectral index.
class PhaseGrid {
public:
    PhaseGrid(std::shared_ptr<const TranslationGrid> tg, std::shared_ptr<const SpectralGrid> sg)
        : tg_(std::move(tg)), sg_(std::move(sg)) {}
    static std::shared_ptr<const PhaseGrid> make(std::shared_ptr<const TranslationGrid> tg,
                                                 std::shared_ptr<const SpectralGrid> sg) {
        return std::make_shared<const PhaseGrid>(std::move(tg), std::move(sg));
    }

    std::size_t size() const { return tg_->size() * sg_->size(); }
    std::size_t w_index(std::size_t i) const { return i / sg_->size(); }
    std::size_t b_index(std::size_t i) const { return i % sg_->size(); }
    double lambda(std::size_t i) const { return sg_->lambda()[b_index(i) / sg_->n_zeta()]; }
    double zeta_angle(std::size_t i) const { return sg_->zeta_angle()[b_index(i) % sg_->n_zeta()]; }
    cplx w(std::size_t i) const { return tg_->node(w_index(i)); }
    // xi = mu x nu, xi-tilde = mu x nu-tilde
    double weight(std::size_t i, SpectralMeasure m = SpectralMeasure::Nu) const {
        return tg_->weight(w_index(i)) * sg_->weight(b_index(i), m);
    }
    PhasePoint point(std::size_t i) const { return PhasePoint::make(w(i), lambda(i), zeta_angle(i)); }

    const TranslationGrid& translations() const { return *tg_; }
    const SpectralGrid& spectral() const { return *sg_; }
    std::shared_ptr<const TranslationGrid> translations_ptr() const { return tg_; }
    std::shared_ptr<const SpectralGrid> spectral_ptr() const { return sg_; }

private:
    std::shared_ptr<const TranslationGrid> tg_;
    std::shared_ptr<const SpectralGrid> sg_;
};

struct PhaseFunction {
    std::shared_ptr<const PhaseGrid> grid;
    CVec values;

    PhaseFunction() = default;
    explicit PhaseFunction(std::shared_ptr<const PhaseGrid> g) : grid(std::move(g)), values(grid->size()) {}
};

// m(w, b) = kappa_s(w) v_r(lambda)
double weight_m(const WeightSpec& m, cplx w, double lambda);

// rho(X) psi = P_{lambda,zeta} * (psi o phi_w) on the grid nodes.
// Throws SupportOverflow when the translated window loses more than 1e-6 of its mass outside the grid.
SampledBallFunction rho_apply(const PhasePoint& X, const Window& psi, std::shared_ptr<const BallGrid> grid);
// Same values without the overflow check.
cplx rho_value(const PhasePoint& X, const Window& psi, cplx z);

// V_psi f(X) = int f P_{-lambda,zeta} conj(psi o phi_w) dmu at every phase node.
PhaseFunction voice_forward(const SampledBallFunction& f, const Window& psi, std::shared_ptr<const PhaseGrid> pg);
// Serial, direct-exponential version for tests and the benchmark.
PhaseFunction voice_forward_reference(const SampledBallFunction& f, const Window& psi,
                                      std::shared_ptr<const PhaseGrid> pg);
// One phase point by direct quadrature.
cplx voice_at(const SampledBallFunction& f, const Window& psi, const PhasePoint& X);

// V*_psi F = sum_X xi(X) F(X) rho(X) psi, evaluated on `out`.
SampledBallFunction voice_adjoint(const PhaseFunction& F, const Window& psi, std::shared_ptr<const BallGrid> out);
SampledBallFunction voice_adjoint_reference(const PhaseFunction& F, const Window& psi,
                                            std::shared_ptr<const BallGrid> out);

// <gamma, psi>^{-1} V*_gamma V_psi f. Throws DomainError if |<gamma,psi>| < 1e-8 |gamma||psi|.
SampledBallFunction voice_invert(const PhaseFunction& Vf, const Window& gamma, const Window& psi,
                                 std::shared_ptr<const BallGrid> out);

// R(X,Y) = <rho(X) psi, rho(Y) psi> by ball quadrature.
cplx reproducing_kernel(const PhasePoint& X, const PhasePoint& Y, const Window& psi, const BallGrid& grid);
// Dense R over every pair of phase nodes, by a Gram product of sampled atoms.
// Row-major size pg.size()^2; guarded at 4e8 entries.
CVec reproducing_kernel_matrix(const Window& psi, const PhaseGrid& pg, const BallGrid& grid);

enum class PNorm { One, Two, Inf };
PNorm parse_pnorm(const std::string& s);

// ||F m||_{L^p} under xi or xi-tilde; L^inf is the grid max.
double coorbit_norm(const PhaseFunction& F, PNorm p, const WeightSpec& m,
                    SpectralMeasure measure = SpectralMeasure::Nu);

struct Admissibility {
    double row = 0.0;  // max_X int |R(X,Y)| m(Y)/m(X) dxi(Y)
    double col = 0.0;  // transposed variant
    double growth = 0.0;  // max_X R(X,X)/m(X)
};
Admissibility admissibility_constant(const Window& psi, const WeightSpec& m, const PhaseGrid& pg, const BallGrid& grid);

// Columns: w_re,w_im,λ,ζ_angle,ξ_weight,re,im
void write_csv(std::ostream& os, const PhaseFunction& F);

}  // namespace hyperball
