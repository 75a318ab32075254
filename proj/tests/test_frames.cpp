// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "hyperball/fixtures.hpp"
#include "hyperball/frames.hpp"
#include "hyperball/special_functions.hpp"

using namespace hyperball;

namespace {

cplx winner(const CVec& a, const CVec& b, const std::vector<double>& w) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]) * w[i];
    return s;
}

}  // namespace

TEST_CASE("bump_chi") {
    CHECK(bump_chi(0.0) == doctest::Approx(1.0));
    CHECK(bump_chi(1.0) == 0.0);
    CHECK(bump_chi(-1.5) == 0.0);
    CHECK(bump_chi(0.5) < 1.0);
    CHECK(bump_chi(0.5) == bump_chi(-0.5));
}

TEST_CASE("ball covering: full coverage, ring growth, bounded overlap") {
    for (double delta : {0.5, 0.25}) {
        const BallCovering cov = build_ball_covering(delta, 2.0, 7, 20000);
        const CoveringCheck chk = check_ball_covering(cov, 11, 20000);
        CAPTURE(delta);
        CHECK(chk.uncovered == 0u);
        CHECK(chk.worst_distance < delta);
        CHECK(cov.ring_counts.front() == 1);
        for (std::size_t k = 1; k < cov.ring_counts.size(); ++k) CHECK(cov.ring_counts[k] >= cov.ring_counts[k - 1]);
        CHECK(cov.r0 >= 1);
        CHECK(cov.r0 <= 20);
        CHECK(cov.mu_U == doctest::Approx(std::pow(std::sinh(delta), 2)));
        // colors separate overlapping discs (tangent ones, at distance 2 delta, may share)
        for (std::size_t i = 0; i < cov.size(); i += 7)
            for (std::size_t j = 0; j < cov.size(); ++j)
                if (i != j && disk::distance(cov.centers[i], cov.centers[j]) < 2.0 * delta * (1.0 - 1e-12))
                    CHECK(cov.color[i] != cov.color[j]);
    }
    CHECK_THROWS_AS(build_ball_covering(0.0, 2.0), DomainError);
    CHECK_THROWS_AS(build_ball_covering(0.5, 9.0), DomainError);
}

TEST_CASE("frequency covering") {
    for (double h : {0.5, 0.25}) {
        const FrequencyCovering fc = build_frequency_covering(h, 40.0);
        CAPTURE(h);
        // weighted translations of the origin give the centers
        CHECK(weighted_translation(3.0, 0.0) == 3.0);
        CHECK(std::is_sorted(fc.centers.begin(), fc.centers.end()));
        const std::size_t mid = fc.size() / 2;
        CHECK(fc.centers[mid] == 0.0);
        for (std::size_t k = 0; k < fc.size(); ++k) CHECK(fc.centers[k] == -fc.centers[fc.size() - 1 - k]);
        for (std::size_t k = mid; k + 1 < fc.size(); ++k)
            CHECK(fc.centers[k + 1] == doctest::Approx(weighted_translation(fc.centers[k], h)));
        CHECK(fc.lo(0) <= -40.0);
        CHECK(fc.hi(fc.size() - 1) >= 40.0);
        // adjacent intervals overlap
        for (std::size_t k = 0; k + 1 < fc.size(); ++k) CHECK(fc.hi(k) > fc.lo(k + 1));
        // the density vanishes like lambda^2 at 0, so nu(V_0) ~ h^3 and the ratio grows as h shrinks
        if (h == 0.5) CHECK(fc.nu_ratio() <= 10.0);
        CHECK(std::isfinite(fc.nu_ratio()));
        CHECK(fc.s0 >= 1);
    }
    CHECK_THROWS_AS(build_frequency_covering(0.0, 16.0), DomainError);
}

TEST_CASE("partition of unity sums to one and respects supports") {
    const PartitionOfUnity pou(build_ball_covering(0.5, 1.5), build_frequency_covering(0.5, 10.0));
    const PartitionCheck c = check_partition(pou, 3, 4000);
    CHECK(c.max_sum_deviation <= 1e-12);
    CHECK(c.min_value >= 0.0);
    CHECK(c.max_value <= 1.0);
    CHECK(c.support_violations == 0u);
    CHECK(pou.size() == pou.J() * pou.K());
    CHECK_THROWS_AS(pou.spatial_all(std::polar(std::tanh(3.0), 0.3)), CoveringError);
}

TEST_CASE("weight quotient stays under the initial-set bound") {
    const PartitionOfUnity pou(build_ball_covering(0.5, 2.0), build_frequency_covering(0.5, 16.0));
    for (WeightSpec m : {WeightSpec{0.0, 0.0}, WeightSpec{0.5, 1.0}, WeightSpec{1.0, 2.0}}) {
        CAPTURE(m.s);
        CHECK(max_weight_quotient(pou, m) <= weight_quotient_bound(pou, m));
    }
    CHECK(max_weight_quotient(pou, {}) == 1.0);
}

TEST_CASE("phase translation") {
    const PhasePoint X = PhasePoint::make(cplx(0.3, 0.2), 2.0, 0.4);
    const PhasePoint O = PhasePoint::make(0.0, 0.0, 1.1);
    const PhasePoint Y = phase_translate(X, O);
    CHECK(std::abs(Y.w[0] - X.w[0]) <= 1e-15);
    CHECK(Y.lambda == 2.0);
    const PartitionOfUnity pou(build_ball_covering(0.5, 1.0), build_frequency_covering(0.5, 6.0));
    const auto probes = initial_set_probes(pou, 3);
    CHECK(probes.size() == 27u);
    for (const auto& p : probes) {
        CHECK(std::atanh(std::abs(p.w[0])) < 0.5);
        CHECK(std::abs(p.lambda) < 0.5);
    }
}

TEST_CASE("Neumann inversion") {
    const std::vector<double> w(40, 0.5);
    CVec F(40);
    for (std::size_t i = 0; i < F.size(); ++i) F[i] = cplx(std::sin(i + 1.0), 0.1 * i);
    const LinearMap id = [](const CVec& x) { return x; };
    const NeumannResult r = neumann_invert(id, F, 0.0, 1e-12, 5, w);
    CHECK(r.iterations == 1);
    CHECK(r.residual == 0.0);
    // op = 0.5 Id: G = 2F, error halves each step
    const LinearMap half = [](const CVec& x) {
        CVec y = x;
        for (auto& v : y) v *= 0.5;
        return y;
    };
    const NeumannResult h = neumann_invert(half, F, 0.5, 1e-10, 60, w);
    for (std::size_t i = 0; i < F.size(); ++i) CHECK(std::abs(h.solution[i] - 2.0 * F[i]) <= 1e-9 * std::abs(F[i]) + 1e-12);
    CHECK(h.iterations <= 36);
    CHECK_THROWS_AS(neumann_invert(half, F, 1.0, 1e-10, 60, w), NonContractive);
    CHECK_THROWS_AS(neumann_invert(half, F, 0.5, 1e-10, 5, w), IterationLimit);
    CHECK(restricted_distance_to_identity(half, {F}, w) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(power_distance_to_identity(half, half, F.size(), w, 5, 1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sequence norms are homogeneous and weighted") {
    CoefficientSequence c{{cplx(3.0, 4.0), cplx(0.0, -1.0), 0.0}, {1.0, 2.0, 5.0}};
    CHECK(sequence_norm(c, PNorm::One) == doctest::Approx(7.0));
    CHECK(sequence_norm(c, PNorm::Two) == doctest::Approx(std::sqrt(29.0)));
    CHECK(sequence_norm(c, PNorm::Inf) == doctest::Approx(5.0));
    CoefficientSequence d = c;
    for (auto& v : d.values) v *= cplx(0.0, -3.0);
    for (PNorm p : {PNorm::One, PNorm::Two, PNorm::Inf})
        CHECK(sequence_norm(d, p) == doctest::Approx(3.0 * sequence_norm(c, p)));
}

TEST_CASE("empirical frame bounds") {
    const FrameBounds b = empirical_frame_bounds({1.0, 4.0, 3.0, 5.0}, {2.0, 2.0, 0.0, 5.0});
    CHECK(b.A == 0.5);
    CHECK(b.A_prime == 2.0);
    CHECK(b.used == 3u);
    CHECK(b.skipped == 1u);
    CHECK_THROWS_AS(empirical_frame_bounds({1.0}, {1.0}), DomainError);
}

TEST_CASE("Schur bounds dominate the weighted L2 operator norm") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t P = 30;
    CVec K(P * P);
    std::vector<double> xi(P), m(P);
    for (auto& v : K) v = cplx(u(rng), u(rng));
    for (std::size_t i = 0; i < P; ++i) {
        xi[i] = 0.1 + 0.05 * (i % 4);
        m[i] = 1.0 + 0.1 * i;
    }
    const SchurBounds s = kernel_schur_bounds(K, xi, m);
    CHECK(kernel_l2_norm(K, xi, m) <= std::sqrt(s.row * s.col) * (1.0 + 1e-12));
    CVec f(P);
    for (auto& v : f) v = cplx(u(rng), u(rng));
    const CVec Kf = apply_kernel(K, xi, f);
    CHECK(weighted_lp(Kf, xi, m, PNorm::Two) <= kernel_l2_norm(K, xi, m) * weighted_lp(f, xi, m, PNorm::Two) * (1 + 1e-12));
    CHECK(weighted_lp(Kf, xi, m, PNorm::One) <= s.col * weighted_lp(f, xi, m, PNorm::One) * (1 + 1e-12));
    CHECK(weighted_lp(Kf, xi, m, PNorm::Inf) <= s.row * weighted_lp(f, xi, m, PNorm::Inf) * (1 + 1e-12));
}

TEST_CASE("frame operator: S is the adjoint of T and the pieces compose") {
    const PartitionOfUnity pou(build_ball_covering(0.5, 1.0), build_frequency_covering(1.0, 6.0));
    const Window psi = normalized(gaussian_window(4.0));
    const auto grid = BallGrid::build(2.5, 40, 64);
    const FrameOperator op(pou, psi, grid);
    CHECK(op.atoms() == pou.size());
    const auto f = sample(standard_bumps()[1], grid).values;
    const auto g = sample(standard_bumps()[4], grid).values;
    const auto& w = grid->weights();
    const cplx lhs = winner(op.apply_T(f), g, w), rhs = winner(f, op.apply_S(g), w);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(lhs));
    // samples are the voice transform at the frame nodes
    const auto fs = sample(standard_bumps()[1], grid);
    const CVec s = op.samples(f);
    double top = 0.0, worst = 0.0;
    for (const cplx v : s) top = std::max(top, std::abs(v));
    for (std::size_t j = 0; j < pou.J(); j += 5)
        for (std::size_t k = 0; k < pou.K(); k += 3)
            worst = std::max(worst, std::abs(s[pou.index(j, k)] - voice_at(fs, psi, pou.node(j, k))));
    // the frequency shift is interpolated on an oversampled grid
    CHECK(worst <= 1e-5 * top);
    // the blur of a partition of unity is at most one
    for (const cplx b : op.blur_sum()) CHECK(std::abs(b) <= 1.0 + 1e-6);
}

TEST_CASE("node weights and coefficient CSV") {
    const PartitionOfUnity pou(build_ball_covering(0.5, 1.0), build_frequency_covering(1.0, 6.0));
    const auto w = node_weights(pou, {0.5, 1.0});
    CHECK(w.size() == pou.size());
    CHECK(w[pou.index(0, pou.K() / 2)] == doctest::Approx(1.0));
    CHECK(w[pou.index(pou.J() - 1, 0)] > 1.0);
}
