// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#include "hyperball/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hyperball/summation.hpp"

namespace hyperball {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr cplx kI(0.0, 1.0);

// Lanczos g = 7, 9 terms
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx z) {
    if (std::abs(z.imag()) > 1e-12 || z.real() > 0.5) return false;
    return std::abs(z.real() - std::round(z.real())) <= 1e-12;
}

// log sin(pi z) without overflow for large |Im z|
cplx log_sin_pi(cplx z) {
    const cplx w = kPi * z;
    if (w.imag() > 1.0) {
        return -kI * w + std::log(1.0 - std::exp(2.0 * kI * w)) + std::log(cplx(0.0, 0.5));
    }
    if (w.imag() < -1.0) {
        return kI * w + std::log(1.0 - std::exp(-2.0 * kI * w)) - std::log(cplx(0.0, 2.0));
    }
    return std::log(std::sin(w));
}

cplx lanczos_log_gamma(cplx z) {
    z -= 1.0;
    cplx x = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

double digamma_half_integer(int twice_a) {
    // psi(a) for a = twice_a / 2 > 0
    if (twice_a % 2 == 0) {
        double s = -kEulerGamma;
        for (int k = 1; k < twice_a / 2; ++k) s += 1.0 / k;
        return s;
    }
    double s = -kEulerGamma - 2.0 * std::log(2.0);
    for (int k = 1; k <= twice_a / 2; ++k) s += 2.0 / (2.0 * k - 1.0);
    return s;
}

// 2F1(a,a;2a;x) with a = n/2 through the logarithmic expansion in 1-x.
double hyp2f1_log_case(int n, double x) {
    const double a = 0.5 * n;
    const double y = 1.0 - x;
    const double pref = std::exp(std::lgamma(2.0 * a) - 2.0 * std::lgamma(a));
    const double ly = std::log(y);
    double poch = 1.0;  // (a)_k^2 / (k!)^2
    double psi1 = -kEulerGamma;
    double psia = digamma_half_integer(n);
    double yk = 1.0;
    CompensatedSum s;
    for (long k = 0; k < kHypMaxTerms; ++k) {
        const double term = poch * (2.0 * psi1 - 2.0 * psia - ly) * yk;
        s.add(term);
        if (k > 2 && std::abs(term) <= 1e-17 * std::abs(s.value())) break;
        const double kk = static_cast<double>(k);
        poch *= ((a + kk) / (kk + 1.0)) * ((a + kk) / (kk + 1.0));
        psi1 += 1.0 / (kk + 1.0);
        psia += 1.0 / (a + kk);
        yk *= y;
    }
    return pref * s.value();
}

cplx series_until(cplx a, cplx b, cplx c, double x, long kmax, long* used, double* tail, bool* done) {
    CompensatedSumC s;
    cplx t = 1.0;
    s.add(t);
    *done = false;
    *tail = 0.0;
    long k = 0;
    for (; k < kmax; ++k) {
        const double kk = static_cast<double>(k);
        t *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * x;
        s.add(t);
        if (t == cplx(0.0)) {
            *done = true;
            ++k;
            break;
        }
        const double ratio = std::abs((a + kk + 1.0) * (b + kk + 1.0) / ((c + kk + 1.0) * (kk + 2.0))) * x;
        const double r = std::max(ratio, x);
        if (r < 1.0) {
            *tail = std::abs(t) * r / (1.0 - r);
            if (*tail <= kHypTailTol * std::abs(s.value())) {
                *done = true;
                ++k;
                break;
            }
        }
    }
    *used = k;
    return s.value();
}

// Partial sums up to index K of the x = 1 series.
void partial_sums_at_one(cplx a, cplx b, cplx c, const std::array<long, 4>& ks, std::array<cplx, 4>& out) {
    CompensatedSumC s;
    cplx t = 1.0;
    s.add(t);
    std::size_t next = 0;
    for (long k = 0; k < ks.back(); ++k) {
        const double kk = static_cast<double>(k);
        t *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0));
        s.add(t);
        if (k + 1 == ks[next]) out[next++] = s.value();
    }
}

// S_K = S - A K^{-s} - B K^{-s-1}, solved from three K values
cplx extrapolate(const std::array<long, 4>& ks, const std::array<cplx, 4>& sums, std::size_t first, cplx s) {
    cplx m[3][4];
    for (std::size_t i = 0; i < 3; ++i) {
        const double k = static_cast<double>(ks[first + i]);
        const cplx p = std::exp(-s * std::log(k));
        m[i][0] = 1.0;
        m[i][1] = -p;
        m[i][2] = -p / k;
        m[i][3] = sums[first + i];
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        for (int j = 0; j < 4; ++j) std::swap(m[col][j], m[piv][j]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const cplx f = m[r][col] / m[col][col];
            for (int j = col; j < 4; ++j) m[r][j] -= f * m[col][j];
        }
    }
    return m[0][3] / m[0][0];
}

}  // namespace

cplx log_gamma_complex(cplx z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("log_gamma_complex: non-finite argument");
    if (is_nonpositive_integer(z)) {
        std::ostringstream msg;
        msg << "gamma pole at z = " << z.real();
        throw DomainError(msg.str());
    }
    if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
    return lanczos_log_gamma(z);
}

cplx gamma_complex(cplx z) {
    if (is_nonpositive_integer(z)) {
        std::ostringstream msg;
        msg << "gamma pole at z = " << z.real();
        throw DomainError(msg.str());
    }
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * gamma_complex(1.0 - z));
    return std::exp(lanczos_log_gamma(z));
}

Hyp2F1Result hyp2f1_series(cplx a, cplx b, cplx c, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("hyp2f1: x must lie in [0, 1]");
    if (is_nonpositive_integer(c)) throw DomainError("hyp2f1: c is a nonpositive integer");
    Hyp2F1Result res;
    if (x == 0.0) {
        res.value = 1.0;
        res.converged = true;
        return res;
    }
    if (x < 1.0) {
        bool done = false;
        res.value = series_until(a, b, c, x, kHypMaxTerms, &res.terms, &res.tail_estimate, &done);
        res.converged = done;
        return res;
    }
    const cplx s = c - a - b;
    if (s.real() <= 0.0) throw DomainError("hyp2f1: x = 1 requires Re(c - a - b) > 0");
    const std::array<long, 4> ks = {kHypMaxTerms / 8, kHypMaxTerms / 4, kHypMaxTerms / 2, kHypMaxTerms};
    std::array<cplx, 4> sums{};
    partial_sums_at_one(a, b, c, ks, sums);
    const cplx e0 = extrapolate(ks, sums, 0, s);
    const cplx e1 = extrapolate(ks, sums, 1, s);
    res.value = e1;
    res.terms = kHypMaxTerms;
    res.tail_estimate = std::abs(e1 - e0);
    res.converged = res.tail_estimate <= 1e-9 * std::max(1.0, std::abs(e1));
    return res;
}

cplx hyp2f1(cplx a, cplx b, cplx c, double x) {
    const Hyp2F1Result r = hyp2f1_series(a, b, c, x);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "hyp2f1 did not converge after " << r.terms << " terms (x = " << x << ", tail ~ " << r.tail_estimate
            << ")";
        throw ConvergenceError(msg.str(), r.value, r.tail_estimate);
    }
    return r.value;
}

cplx gauss_sum(cplx a, cplx b, cplx c) {
    return std::exp(log_gamma_complex(c) + log_gamma_complex(c - a - b) - log_gamma_complex(c - a) -
                    log_gamma_complex(c - b));
}

cplx spherical_function_x(double lambda, double x, int n) {
    if (n < 1) throw DomainError("spherical_function: n must be >= 1");
    if (!(x >= 0.0) || x >= 1.0) throw DomainError("spherical_function: |z|^2 outside [0, 1)");
    if (x == 0.0) return 1.0;
    const cplx alpha(0.5 * n, 0.5 * lambda);
    const cplx alpha_bar = std::conj(alpha);
    const double y = 1.0 - x;
    const double al = std::abs(lambda);
    const double direct_exp = al * std::sqrt(x);
    const double conn_exp = 0.25 * al * y;
    const cplx pre = std::exp(alpha * std::log(y));

    if (al < 1e-4) {
        if (x <= 0.5) return pre * hyp2f1(alpha, alpha, cplx(n), x);
        return pre * hyp2f1_log_case(n, x);
    }
    if (x <= 0.5 && (direct_exp <= 4.0 || direct_exp <= conn_exp)) return pre * hyp2f1(alpha, alpha, cplx(n), x);

    const cplx il(0.0, lambda);
    const double lgn = std::lgamma(static_cast<double>(n));
    const cplx ca = std::exp(lgn + log_gamma_complex(-il) - 2.0 * log_gamma_complex(alpha_bar));
    const cplx cb = std::exp(lgn + log_gamma_complex(il) - 2.0 * log_gamma_complex(alpha));
    const cplx f1 = hyp2f1(alpha, alpha, 1.0 + il, y);
    const cplx f2 = hyp2f1(alpha_bar, alpha_bar, 1.0 - il, y);
    return pre * (ca * f1 + cb * std::exp(-il * std::log(y)) * f2);
}

cplx spherical_function(double lambda, const BallPoint& z) {
    if (std::sqrt(z.norm2()) >= 1.0 - kBoundaryEps) throw DomainError("spherical_function: z too close to the boundary");
    return spherical_function_x(lambda, z.norm2(), static_cast<int>(z.dim()));
}

cplx harish_chandra_c(double lambda, int n) {
    if (lambda == 0.0) throw DomainError("harish_chandra_c: pole at lambda = 0");
    const cplx il(0.0, lambda);
    const cplx alpha(0.5 * n, 0.5 * lambda);
    const cplx lc = (static_cast<double>(n) - il) * std::log(2.0) + std::lgamma(static_cast<double>(n)) +
                    log_gamma_complex(il) - 2.0 * log_gamma_complex(alpha);
    return std::exp(lc);
}

cplx harish_chandra_c_inv_duplication(double lambda, int n) {
    if (lambda == 0.0) return 0.0;
    const cplx alpha(0.5 * n, 0.5 * lambda);
    const cplx g = gamma_complex(alpha);
    const double pref = std::pow(2.0, 1.0 - n) * std::sqrt(kPi) / std::tgamma(static_cast<double>(n));
    return pref * (g / gamma_complex(cplx(0.0, 0.5 * lambda))) * (g / gamma_complex(cplx(0.5, 0.5 * lambda)));
}

double log_abs_c_inv2(double lambda, int n) {
    const cplx alpha(0.5 * n, 0.5 * lambda);
    const double lc = n * std::log(2.0) + std::lgamma(static_cast<double>(n)) +
                      log_gamma_complex(cplx(0.0, lambda)).real() - 2.0 * log_gamma_complex(alpha).real();
    return -2.0 * lc;
}

double plancherel_density(double lambda, int n) {
    if (lambda == 0.0) return 0.0;
    const double norm = std::pow(4.0, n - 1) / (n * kPi);
    return norm * 0.5 * std::exp(log_abs_c_inv2(lambda, n));
}

double weight_kappa_x(double s, double x) {
    if (s < 0.0) throw DomainError("weight_kappa: s must be >= 0");
    return std::pow(1.0 - x, -s);
}

double weight_kappa(double s, const BallPoint& z) { return weight_kappa_x(s, z.norm2()); }

double weight_v(double r, double lambda) {
    if (r < 0.0) throw DomainError("weight_v: r must be >= 0");
    return std::pow(1.0 + lambda * lambda, 0.5 * r);
}

}  // namespace hyperball
