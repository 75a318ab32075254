// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#pragma once

#include <string>

#include "hyperball/geometry.hpp"

namespace hyperball {

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, cplx partial, double tail)
        : std::runtime_error(what), partial_sum(partial), tail_estimate(tail) {}
    cplx partial_sum;
    double tail_estimate;
};

cplx log_gamma_complex(cplx z);
cplx gamma_complex(cplx z);

struct Hyp2F1Result {
    cplx value;
    long terms = 0;
    double tail_estimate = 0.0;
    bool converged = false;
};

inline constexpr long kHypMaxTerms = 100000;
inline constexpr double kHypTailTol = 1e-15;

// Power series for 0 <= x < 1. At x = 1 (needs Re(c-a-b) > 0) the partial sums are
// extrapolated in K^{-(c-a-b)}.
Hyp2F1Result hyp2f1_series(cplx a, cplx b, cplx c, double x);
// Throws ConvergenceError when the series does not settle.
cplx hyp2f1(cplx a, cplx b, cplx c, double x);

// Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b))
cplx gauss_sum(cplx a, cplx b, cplx c);

// phi_lambda as a function of x = |z|^2
cplx spherical_function_x(double lambda, double x, int n);
cplx spherical_function(double lambda, const BallPoint& z);

cplx harish_chandra_c(double lambda, int n);
// 1/c(lambda) from the duplication-formula form
cplx harish_chandra_c_inv_duplication(double lambda, int n);
// log |c(lambda)|^{-2}
double log_abs_c_inv2(double lambda, int n);

// Density of nu per unit lambda and unit sigma. See README for the normalization.
double plancherel_density(double lambda, int n);

struct WeightSpec {
    double s = 0.0;
    double r = 0.0;
};

double weight_kappa(double s, const BallPoint& z);
double weight_kappa_x(double s, double x);  // x = |z|^2
double weight_v(double r, double lambda);

}  // namespace hyperball
