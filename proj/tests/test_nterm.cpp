// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "hyperball/nterm.hpp"

using namespace hyperball;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("best N-term keeps the largest weighted entries") {
    CoefficientSequence c{{1.0, cplx(0.0, -3.0), 2.0, 0.5}, {1.0, 1.0, 2.0, 1.0}};
    // |c m| = 1, 3, 4, 0.5
    const NTermResult r = best_n_term(c, 2, 2.0);
    CHECK(r.subset == std::vector<std::size_t>{2, 1});
    CHECK(r.E_N == doctest::Approx(std::sqrt(1.25)));
    CHECK(best_n_term(c, 0, 1.0).E_N == doctest::Approx(8.5));
    CHECK(best_n_term(c, 4, 2.0).E_N == 0.0);
    CHECK(best_n_term(c, 1, kInf).E_N == doctest::Approx(3.0));
    CHECK_THROWS_AS(best_n_term(c, 5, 2.0), DomainError);
    CHECK_THROWS_AS(best_n_term(c, 1, 0.0), DomainError);
}

TEST_CASE("ties go to the smaller index") {
    CoefficientSequence c{{1.0, 2.0, 2.0, 2.0}, {}};
    CHECK(best_n_term(c, 2, 2.0).subset == std::vector<std::size_t>{1, 2});
}

TEST_CASE("N-term errors are non-increasing and end at zero") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        CoefficientSequence c;
        for (int i = 0; i < 200; ++i) {
            c.values.emplace_back(u(rng) - 0.5, u(rng) - 0.5);
            c.weights.push_back(1.0 + 3.0 * u(rng));
        }
        for (double q : {1.0, 2.0, kInf}) {
            const auto e = n_term_errors(c, q);
            CHECK(e.size() == 201u);
            CHECK(e.back() == 0.0);
            for (std::size_t n = 1; n < e.size(); ++n) CHECK(e[n] <= e[n - 1]);
            CHECK(e[17] == doctest::Approx(best_n_term(c, 17, q).E_N).epsilon(1e-14));
        }
    }
}

TEST_CASE("lemma for a_j = j^{-2}") {
    std::vector<double> a(1000);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = 1.0 / std::pow(j + 1.0, 2.0);
    for (auto [p, q] : {std::pair{1.0, 2.0}, std::pair{2.0, 4.0}, std::pair{1.0, kInf}}) {
        const NTermLemma l = n_term_lemma_check(a, p, q);
        CAPTURE(p);
        CAPTURE(q);
        CHECK(l.lower_holds);
        CHECK(l.lower <= l.middle);
        CHECK(l.middle / l.upper < 10.0);
    }
}

TEST_CASE("lemma on a nearly one-sparse sequence") {
    std::vector<double> a(50, 1e-14);
    a[0] = 1.0;
    const NTermLemma l = n_term_lemma_check(a, 1.0, 2.0);
    CHECK(l.lower_holds);
    // middle term is dominated by N = 1: E_1 = ||a||_2
    CHECK(l.middle == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(l.upper == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("lower inequality on random decreasing sequences") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(300);
        for (auto& v : a) v = std::exp(-8.0 * u(rng));
        std::sort(a.rbegin(), a.rend());
        for (auto [p, q] : {std::pair{1.0, 2.0}, std::pair{2.0, 4.0}}) {
            const NTermLemma l = n_term_lemma_check(a, p, q);
            CHECK(l.middle - l.lower >= -1e-12 * l.lower);
        }
    }
}

TEST_CASE("lemma input validation") {
    CHECK_THROWS_AS(n_term_lemma_check({1.0, 2.0}, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(n_term_lemma_check({1.0, 0.0}, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(n_term_lemma_check({1.0, 0.5}, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(n_term_lemma_check({1.0, 0.5}, 0.0, 1.0), DomainError);
}
