// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>

#include "hyperball/discretization.hpp"

namespace hyperball {

// Profile g(rho), rho = |z| in [0, 1).
struct RadialProfile {
    std::function<cplx(double)> g;
    // support radius in |z| (1 = unbounded)
    double support = 1.0;
    std::string name;

    cplx operator()(double rho) const { return rho < support ? g(rho) : cplx(0.0); }
};

class TailError : public DomainError {
public:
    using DomainError::DomainError;
};

SpectralFunction helgason_forward(const SampledBallFunction& f, std::shared_ptr<const SpectralGrid> out);
SampledBallFunction helgason_inverse(const SpectralFunction& F, std::shared_ptr<const BallGrid> out);

// ghat(lambda) = int g phi_{-lambda} dmu on the radial part of `radial`.
// Throws TailError when the outer 10% of the radial range carries more than 1e-10 of the mass.
CVec spherical_transform(const RadialProfile& g, const std::vector<double>& lambdas, const BallGrid& radial);

// (f * g)(z) = int f(w) g(|phi_z(w)|) dmu(w), evaluated on `out`.
SampledBallFunction convolve(const SampledBallFunction& f, const RadialProfile& g, std::shared_ptr<const BallGrid> out);

// Sphere average per ring, interpolated in t between rings.
RadialProfile radialize(const SampledBallFunction& f);

// Fraction of nu-energy carried by |lambda| > cut.
double spectral_tail_fraction(const SpectralFunction& F, double cut);
// Fraction of mu-mass of |f|^2 carried by t > t_cut.
double spatial_tail_fraction(const SampledBallFunction& f, double t_cut);

// Columnar CSV: z_re,z_im,weight,re,im / lambda,zeta_angle,nu_weight,re,im
void write_csv(std::ostream& os, const SampledBallFunction& f);
void write_csv(std::ostream& os, const SpectralFunction& F);

}  // namespace hyperball
