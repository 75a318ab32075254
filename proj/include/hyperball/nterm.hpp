// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#pragma once

#include <vector>

#include "hyperball/frames.hpp"

namespace hyperball {

struct NTermResult {
    std::vector<std::size_t> subset;  // chosen indices, by decreasing |c m|
    double E_N = 0.0;                 // l^q_m norm of the rest
};

// Keeps the N largest |c_i m_i|; ties go to the smaller index. q may be infinite.
NTermResult best_n_term(const CoefficientSequence& c, std::size_t N, double q);

// E_N for every N = 0..len, from one sort.
std::vector<double> n_term_errors(const CoefficientSequence& c, double q);

struct NTermLemma {
    double lower = 0.0;   // 2^{-1/p} ||a||_p
    double middle = 0.0;  // (sum_N N^{-1} (N^alpha E_{N,q}(a))^p)^{1/p}
    double upper = 0.0;   // ||a||_p; middle / upper is the empirical constant
    bool lower_holds = false;
};

// E_{N,q}(a) = (sum_{j >= N} a_j^q)^{1/q}, 1-based. a must be positive and non-increasing;
// 0 < p < q <= inf. Throws DomainError otherwise.
NTermLemma n_term_lemma_check(const std::vector<double>& a, double p, double q);

}  // namespace hyperball
