// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "hyperball/fixtures.hpp"
#include "hyperball/voice.hpp"

using namespace hyperball;

namespace {

double rel_l2(const CVec& a, const CVec& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return std::sqrt(num / den);
}

std::shared_ptr<const PhaseGrid> tiny_phase() {
    return PhaseGrid::make(TranslationGrid::build({0.8, 3, 0.6, 4}), SpectralGrid::build(8.0, 65, 8));
}

}  // namespace

TEST_CASE("windows: norms, reach and inner products") {
    const Window g = gaussian_window(4.0);
    const Window p = polynomial_window(4.0);
    CHECK(g.norm > 0.0);
    CHECK(std::abs(g(std::tanh(g.reach_t))) <= 1.1e-16);
    CHECK(std::isinf(g.kappa_exponent));
    CHECK(p.kappa_exponent == 4.0);
    // int (1-r^2)^8 dmu = int_0^1 (1-x)^8 / (1-x)^2 dx = 1/7
    CHECK(p.norm * p.norm == doctest::Approx(1.0 / 7.0).epsilon(1e-10));
    CHECK(window_inner(g, g).real() == doctest::Approx(g.norm * g.norm).epsilon(1e-12));
    CHECK(normalized(g).norm == doctest::Approx(1.0));
    CHECK(window_inner(normalized(p), normalized(p)).real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(gaussian_window(0.0), DomainError);
    CHECK_THROWS_AS(polynomial_window(-1.0), DomainError);
}

TEST_CASE("translation grid counts and weights") {
    const auto tg = TranslationGrid::build({2.0, 8, 0.5, 6});
    double total = 0.0;
    for (double w : tg->weights()) total += w;
    CHECK(total == doctest::Approx(std::pow(std::sinh(2.0), 2)).epsilon(1e-12));
    for (const cplx z : tg->nodes()) CHECK(std::abs(z) < std::tanh(2.0));
}

TEST_CASE("rho_apply matches rho_value and detects overflow") {
    const auto bg = BallGrid::build(2.5, 40, 64);
    const Window psi = gaussian_window(4.0);
    const PhasePoint X = PhasePoint::make(cplx(0.2, -0.1), 3.0, 1.0);
    const auto a = rho_apply(X, psi, bg);
    for (std::size_t i = 0; i < bg->size(); i += 97) CHECK(a.values[i] == rho_value(X, psi, bg->node(i)));
    // |P_{lambda,zeta}|^2 = P_{0,zeta}^2 moves to the window center: ||rho(X) psi||^2 = P_{0,zeta}(w)^2 ||psi||^2
    const double base = disk::poisson_base(X.w[0], X.zeta[0]);
    CHECK(norm_ball(a) == doctest::Approx(std::sqrt(base) * psi.norm).epsilon(1e-6));
    const auto small = BallGrid::build_region(0.5, 20, 32);
    CHECK_THROWS_AS(rho_apply(X, psi, small), SupportOverflow);
}

TEST_CASE("voice transform matches direct quadrature and the serial reference") {
    const auto bg = BallGrid::build(1.0, 32, 48);
    const auto f = sample(standard_bumps()[4], bg);
    const Window psi = gaussian_window(4.0);
    const auto pg = tiny_phase();
    const PhaseFunction V = voice_forward(f, psi, pg);
    const PhaseFunction Vr = voice_forward_reference(f, psi, pg);
    CHECK(rel_l2(V.values, Vr.values) <= 1e-12);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < pg->size(); i += 37) {
        worst = std::max(worst, std::abs(V.values[i] - voice_at(f, psi, pg->point(i))));
        scale = std::max(scale, std::abs(V.values[i]));
    }
    CHECK(worst <= 1e-12 * scale);
}

TEST_CASE("voice adjoint is the adjoint") {
    const auto bg = BallGrid::build(1.0, 24, 32);
    const Window psi = polynomial_window(4.0);
    const auto pg = tiny_phase();
    const auto f = sample(standard_bumps()[1], bg);
    PhaseFunction F(pg);
    for (std::size_t i = 0; i < pg->size(); ++i) F.values[i] = cplx(std::cos(0.37 * i), std::sin(0.11 * i));
    const PhaseFunction V = voice_forward(f, psi, pg);
    cplx lhs = 0.0;
    for (std::size_t i = 0; i < pg->size(); ++i) lhs += V.values[i] * std::conj(F.values[i]) * pg->weight(i);
    const auto g = voice_adjoint(F, psi, bg);
    const cplx rhs = inner_ball(f, g);
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(rhs));
    const auto gr = voice_adjoint_reference(F, psi, bg);
    CHECK(rel_l2(g.values, gr.values) <= 1e-12);
}

TEST_CASE("translation covariance at lambda = 0") {
    // V(f o phi_a)(a, 0, zeta) = P_{0,zeta}(a) V f(o, 0, phi_a zeta), and V f(o, 0, .) is constant for radial f
    const auto bg = BallGrid::build(1.5, 160, 256);
    const Window psi = gaussian_window(6.0);
    const cplx a(0.3, 0.1);
    const auto f = sample(BumpFixture{"b", 0.4, 0.0, 0.0}, bg);
    const auto tf = sample(BumpFixture{"tb", 0.4, a, 0.0}, bg);
    // reference value on a grid fitted to the bump support
    const auto fitted = BallGrid::build_region(std::atanh(0.4), 96, 16);
    const cplx c = voice_at(sample(BumpFixture{"b", 0.4, 0.0, 0.0}, fitted), psi, PhasePoint::make(0.0, 0.0, 0.0));
    const cplx c0 = voice_at(f, psi, PhasePoint::make(0.0, 0.0, 0.0));
    CHECK(std::abs(voice_at(f, psi, PhasePoint::make(0.0, 0.0, 2.1)) - c0) <= 1e-12 * std::abs(c0));
    for (double ang : {0.0, 1.3, 3.0, 4.4}) {
        const cplx v = voice_at(tf, psi, PhasePoint::make(a, 0.0, ang));
        const double p = std::sqrt(disk::poisson_base(a, std::polar(1.0, ang)));
        CAPTURE(ang);
        CHECK(std::abs(v - p * c) <= 1e-5 * std::abs(p * c));
    }
}

TEST_CASE("voice_invert refuses orthogonal windows") {
    const auto pg = tiny_phase();
    const auto bg = BallGrid::build(1.0, 16, 16);
    PhaseFunction F(pg);
    Window w = gaussian_window(4.0);
    Window z = scaled(w, 0.0);
    z.norm = 1.0;  // keep the relative test meaningful
    CHECK_THROWS_AS(voice_invert(F, z, w, bg), DomainError);
}

TEST_CASE("reproducing kernel: Hermitian and the dense matrix agrees") {
    const auto bg = BallGrid::build(3.5, 64, 96);
    const Window psi = normalized(gaussian_window(4.0));
    const auto pg = PhaseGrid::make(TranslationGrid::build({0.5, 2, 0.6, 3}), SpectralGrid::build(5.0, 64, 2));
    const PhasePoint X = pg->point(5), Y = pg->point(pg->size() - 3);
    const cplx rxy = reproducing_kernel(X, Y, psi, *bg), ryx = reproducing_kernel(Y, X, psi, *bg);
    CHECK(std::abs(rxy - std::conj(ryx)) <= 1e-14);
    CHECK(reproducing_kernel(X, X, psi, *bg).real() ==
          doctest::Approx(disk::poisson_base(X.w[0], X.zeta[0])).epsilon(1e-6));
    const CVec R = reproducing_kernel_matrix(psi, *pg, *bg);
    const std::size_t P = pg->size();
    CHECK(std::abs(R[5 * P + (P - 3)] - rxy) <= 1e-12);
}

TEST_CASE("coorbit norms") {
    const auto pg = tiny_phase();
    PhaseFunction F(pg);
    for (auto& v : F.values) v = cplx(0.0, 2.0);
    double mass = 0.0;
    for (std::size_t i = 0; i < pg->size(); ++i) mass += pg->weight(i);
    CHECK(coorbit_norm(F, PNorm::One, {}) == doctest::Approx(2.0 * mass));
    CHECK(coorbit_norm(F, PNorm::Two, {}) == doctest::Approx(2.0 * std::sqrt(mass)));
    CHECK(coorbit_norm(F, PNorm::Inf, {}) == doctest::Approx(2.0));
    // weights raise the norm
    CHECK(coorbit_norm(F, PNorm::Two, {1.0, 1.0}) > coorbit_norm(F, PNorm::Two, {}));
    CHECK(parse_pnorm("inf") == PNorm::Inf);
    CHECK_THROWS_AS(parse_pnorm("3"), DomainError);
}

TEST_CASE("admissibility constant is finite and at least the diagonal") {
    const auto bg = BallGrid::build(3.5, 64, 96);
    const Window psi = normalized(gaussian_window(4.0));
    const auto pg = PhaseGrid::make(TranslationGrid::build({0.5, 2, 0.6, 3}), SpectralGrid::build(5.0, 64, 2));
    const Admissibility a = admissibility_constant(psi, {}, *pg, *bg);
    CHECK(std::isfinite(a.row));
    CHECK(std::isfinite(a.col));
    double top = 0.0;
    for (std::size_t i = 0; i < pg->size(); ++i) top = std::max(top, disk::poisson_base(pg->w(i), pg->point(i).zeta[0]));
    CHECK(a.growth == doctest::Approx(top).epsilon(1e-6));
    CHECK(a.row > 0.0);
}

TEST_CASE("phase CSV header") {
    const auto pg = tiny_phase();
    PhaseFunction F(pg);
    std::ostringstream os;
    write_csv(os, F);
    CHECK(os.str().rfind("w_re,w_im,λ,ζ_angle,ξ_weight,re,im", 0) == 0);
}
