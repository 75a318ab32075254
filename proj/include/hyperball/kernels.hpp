// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#pragma once

#include <cstddef>

#include "hyperball/discretization.hpp"

namespace hyperball::kernels {

// out[k*N_zeta + j] = sum_i c[i] * P_{-lambda_k, zeta_j}(z[i])      (n = 1)
// Overwrites out (size sg.size()). OpenMP over zeta blocks when not already inside a parallel region.
void forward(const cplx* z, const cplx* c, std::size_t count, const SpectralGrid& sg, cplx* out);

// out[i] = sum_{k,j} Fw[k*N_zeta + j] * P_{lambda_k, zeta_j}(z[i]); Fw already carries the spectral weights.
void inverse(const cplx* Fw, const SpectralGrid& sg, const cplx* z, std::size_t count, cplx* out);

// Direct evaluation with std::exp per term; O(count * N_lambda * N_zeta), serial.
void forward_reference(const cplx* z, const cplx* c, std::size_t count, const SpectralGrid& sg, cplx* out);
void inverse_reference(const cplx* Fw, const SpectralGrid& sg, const cplx* z, std::size_t count, cplx* out);

// Threads used by the parallel kernels (0 = OpenMP default).
void set_thread_cap(int threads);
int thread_cap();
// Team size a parallel region started here would use (1 inside an active region).
int workers();

}  // namespace hyperball::kernels
