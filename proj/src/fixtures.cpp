// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#include "hyperball/fixtures.hpp"

#include <cmath>

namespace hyperball {

namespace {

double bump(double s) { return s < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; }

}  // namespace

cplx BumpFixture::operator()(cplx z) const {
    const double s = std::abs(disk::mobius(center, z)) / rho0;
    if (s >= 1.0) return 0.0;
    const double v = bump(s);
    return freq == 0.0 ? cplx(v) : v * std::polar(1.0, freq * z.real());
}

double BumpFixture::support_t() const { return std::atanh(std::abs(center)) + std::atanh(rho0); }

std::vector<BumpFixture> standard_bumps() {
    return {
        {"centered", 0.6, cplx(0.0, 0.0), 0.0},
        {"shifted_x", 0.5, cplx(0.2, 0.0), 0.0},
        {"shifted_y", 0.55, cplx(0.0, 0.25), 0.0},
        {"shifted_xy", 0.5, cplx(-0.15, 0.1), 0.0},
        {"modulated", 0.6, cplx(0.05, -0.05), 3.0},
    };
}

RadialProfile bump_profile(double rho0) {
    RadialProfile p;
    p.name = "bump";
    p.support = rho0;
    p.g = [rho0](double rho) { return cplx(bump(rho / rho0)); };
    return p;
}

SampledBallFunction sample(const BumpFixture& b, std::shared_ptr<const BallGrid> grid) {
    return SampledBallFunction::sample(grid, b);
}

}  // namespace hyperball
