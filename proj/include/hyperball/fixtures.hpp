// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#pragma once

#include <string>
#include <vector>

#include "hyperball/discretization.hpp"
#include "hyperball/helgason.hpp"

namespace hyperball {

// exp(-1/(1 - s^2)) with s = |phi_center(z)| / rho0, times exp(i * freq * Re z); zero for s >= 1.
struct BumpFixture {
    std::string name;
    double rho0 = 0.6;
    cplx center = 0.0;
    double freq = 0.0;

    cplx operator()(cplx z) const;
    // hyperbolic radius of the support around the origin
    double support_t() const;
};

std::vector<BumpFixture> standard_bumps();
RadialProfile bump_profile(double rho0);
SampledBallFunction sample(const BumpFixture& b, std::shared_ptr<const BallGrid> grid);

}  // namespace hyperball
