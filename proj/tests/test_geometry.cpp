// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "hyperball/geometry.hpp"
#include "sampling.hpp"

using namespace hyperball;
using testing_util::dist;
using testing_util::Sampler;

TEST_CASE("mobius map sends a to the origin and the origin to a") {
    Sampler s(11);
    for (std::size_t n : {1u, 2u, 3u})
        for (int i = 0; i < 50; ++i) {
            const BallPoint a = s.ball(n);
            CHECK(std::sqrt(mobius_apply(a, a).norm2()) < 1e-13);
            CHECK(dist(mobius_apply(a, BallPoint::origin(n)).coords(), a.coords()) < 1e-14);
        }
}

TEST_CASE("mobius map is an involution") {
    Sampler s(12);
    for (std::size_t n : {1u, 2u})
        for (int i = 0; i < 1000; ++i) {
            const BallPoint a = s.ball(n), z = s.ball(n);
            CHECK(dist(mobius_apply(a, mobius_apply(a, z)).coords(), z.coords()) <= 1e-12);
        }
}

TEST_CASE("product identity 1 - <phi z, phi w> holds on seeded triples") {
    Sampler s(13);
    double worst = 0.0;
    for (std::size_t n : {1u, 2u})
        for (int i = 0; i < 1000; ++i) worst = std::max(worst, mobius_product_residual(s.ball(n), s.ball(n), s.ball(n)));
    CHECK(worst <= 1e-12);
}

TEST_CASE("identity at the origin and the scalar fast path agree") {
    Sampler s(14);
    const BallPoint z = s.ball(2);
    CHECK(dist(mobius_apply(BallPoint::origin(2), z).coords(), z.coords()) == 0.0);
    for (int i = 0; i < 100; ++i) {
        const BallPoint a = s.ball(1), w = s.ball(1);
        CHECK(std::abs(mobius_apply(a, w)[0] - disk::mobius(a[0], w[0])) < 1e-14);
    }
}

TEST_CASE("mobius maps preserve the sphere and the hyperbolic distance") {
    Sampler s(15);
    for (std::size_t n : {1u, 2u})
        for (int i = 0; i < 200; ++i) {
            const BallPoint a = s.ball(n, 0.9), z = s.ball(n, 0.9), w = s.ball(n, 0.9);
            const SpherePoint zeta = s.sphere(n);
            CHECK(std::abs(norm2(mobius_apply(a, zeta).coords()) - 1.0) < 1e-12);
            const double d0 = hyperbolic_distance(z, w);
            const double d1 = hyperbolic_distance(mobius_apply(a, z), mobius_apply(a, w));
            CHECK(std::abs(d0 - d1) <= 1e-9 * (1.0 + d0));
        }
}

TEST_CASE("addition theorem for Poisson kernels") {
    Sampler s(16);
    double worst = 0.0;
    for (std::size_t n : {1u, 2u})
        for (int i = 0; i < 500; ++i) {
            const BallPoint w = s.ball(n, 0.8), z = s.ball(n, 0.8);
            const SpherePoint zeta = s.sphere(n);
            const cplx lam(s.uniform(-20.0, 20.0), i % 5 == 0 ? s.uniform(-1.0, 1.0) : 0.0);
            const cplx lhs = poisson_kernel(lam, zeta, mobius_apply(w, z));
            const cplx rhs = poisson_kernel(lam, zeta, w) * poisson_kernel(lam, mobius_apply(w, zeta), z);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
    CHECK(worst <= 1e-11);
}

TEST_CASE("Poisson kernel basics") {
    Sampler s(17);
    const SpherePoint zeta = s.sphere(2);
    CHECK(std::abs(poisson_kernel(cplx(3.0, 0.0), zeta, BallPoint::origin(2)) - 1.0) < 1e-15);
    // real lambda: |P| = P_0 = base^{n/2}
    const BallPoint z = s.ball(2, 0.7);
    const double base = (1.0 - z.norm2()) / std::norm(1.0 - inner(z.coords(), zeta.coords()));
    CHECK(std::abs(std::abs(poisson_kernel(cplx(5.0, 0.0), zeta, z)) - base) < 1e-13);
}

TEST_CASE("invariant density and distance closed forms") {
    const BallPoint z = BallPoint::scalar(cplx(0.3, 0.4));
    CHECK(invariant_density(z) == doctest::Approx(1.0 / (0.75 * 0.75)).epsilon(1e-14));
    CHECK(hyperbolic_distance(BallPoint::scalar(0.0), z) == doctest::Approx(std::atanh(0.5)).epsilon(1e-14));
    CHECK(disk::distance(0.0, cplx(0.0, std::tanh(1.25))) == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("inputs outside the ball are rejected") {
    CHECK_THROWS_AS(BallPoint(CVec{cplx(1.0, 0.0)}), DomainError);
    CHECK_THROWS_AS(SpherePoint(CVec{cplx(0.0), cplx(0.0)}), DomainError);
    CHECK_THROWS_AS(mobius_apply(BallPoint::scalar(0.1), BallPoint(CVec{0.1, 0.2})), DomainError);
}
