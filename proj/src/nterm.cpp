// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#include "hyperball/nterm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hyperball/summation.hpp"

namespace hyperball {

namespace {

// order[i] by decreasing |c m|, stable in index
std::vector<std::size_t> greedy_order(const CoefficientSequence& c, std::vector<double>& mag) {
    const std::size_t n = c.values.size();
    if (!c.weights.empty() && c.weights.size() != n) throw DomainError("n-term: weight size mismatch");
    mag.resize(n);
    for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(c.values[i]) * (c.weights.empty() ? 1.0 : c.weights[i]);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
    return order;
}

// tails[N] = || (x_N, x_{N+1}, ...) ||_q for x sorted decreasing (0-based N)
std::vector<double> tail_norms(const std::vector<double>& x, double q) {
    const std::size_t n = x.size();
    std::vector<double> out(n + 1, 0.0);
    if (std::isinf(q)) {
        for (std::size_t N = 0; N < n; ++N) out[N] = x[N];
        return out;
    }
    // accumulate from the small end
    CompensatedSum s;
    for (std::size_t i = n; i-- > 0;) {
        s.add(std::pow(x[i], q));
        out[i] = std::pow(s.value(), 1.0 / q);
    }
    return out;
}

}  // namespace

std::vector<double> n_term_errors(const CoefficientSequence& c, double q) {
    if (!(q > 0.0)) throw DomainError("n-term: q must be positive");
    std::vector<double> mag;
    const auto order = greedy_order(c, mag);
    std::vector<double> sorted(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = mag[order[i]];
    return tail_norms(sorted, q);
}

NTermResult best_n_term(const CoefficientSequence& c, std::size_t N, double q) {
    if (N > c.values.size()) throw DomainError("n-term: N exceeds the sequence length");
    if (!(q > 0.0)) throw DomainError("n-term: q must be positive");
    std::vector<double> mag;
    const auto order = greedy_order(c, mag);
    NTermResult r;
    r.subset.assign(order.begin(), order.begin() + static_cast<long>(N));
    std::vector<double> rest;
    for (std::size_t i = N; i < order.size(); ++i) rest.push_back(mag[order[i]]);
    r.E_N = rest.empty() ? 0.0 : tail_norms(rest, q)[0];
    return r;
}

NTermLemma n_term_lemma_check(const std::vector<double>& a, double p, double q) {
    if (!(p > 0.0) || !(q > p)) throw DomainError("n-term lemma: need 0 < p < q <= inf");
    if (a.empty()) throw DomainError("n-term lemma: empty sequence");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] > 0.0) || !std::isfinite(a[i])) throw DomainError("n-term lemma: entries must be positive");
        if (i > 0 && a[i] > a[i - 1]) throw DomainError("n-term lemma: sequence is not decreasing");
    }
    const double alpha = 1.0 / p - (std::isinf(q) ? 0.0 : 1.0 / q);
    const auto E = tail_norms(a, q);
    CompensatedSum mid, norm;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double N = static_cast<double>(i + 1);
        mid.add(std::pow(std::pow(N, alpha) * E[i], p) / N);
        norm.add(std::pow(a[i], p));
    }
    NTermLemma r;
    r.upper = std::pow(norm.value(), 1.0 / p);
    r.lower = std::pow(2.0, -1.0 / p) * r.upper;
    r.middle = std::pow(mid.value(), 1.0 / p);
    r.lower_holds = r.lower <= r.middle;
    return r;
}

}  // namespace hyperball
