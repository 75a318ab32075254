// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#include <benchmark/benchmark.h>

#include "hyperball/fixtures.hpp"
#include "hyperball/kernels.hpp"
#include "hyperball/voice.hpp"

using namespace hyperball;

namespace {

struct Problem {
    std::shared_ptr<const BallGrid> bg = BallGrid::build(1.0, 32, 64);
    std::shared_ptr<const SpectralGrid> sg = SpectralGrid::build(20.0, 129, 32);
    CVec c;
    Problem() {
        const auto f = sample(standard_bumps()[4], bg);
        c.resize(bg->size());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.values[i] * bg->weight(i);
    }
};

const Problem& problem() {
    static const Problem p;
    return p;
}

void BM_forward(benchmark::State& st) {
    const Problem& p = problem();
    CVec out(p.sg->size());
    for (auto _ : st) {
        kernels::forward(p.bg->nodes().data(), p.c.data(), p.c.size(), *p.sg, out.data());
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_forward_reference(benchmark::State& st) {
    const Problem& p = problem();
    CVec out(p.sg->size());
    for (auto _ : st) {
        kernels::forward_reference(p.bg->nodes().data(), p.c.data(), p.c.size(), *p.sg, out.data());
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_inverse(benchmark::State& st) {
    const Problem& p = problem();
    CVec F(p.sg->size(), cplx(1e-3)), out(p.bg->size());
    for (auto _ : st) {
        kernels::inverse(F.data(), *p.sg, p.bg->nodes().data(), p.bg->size(), out.data());
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_inverse_reference(benchmark::State& st) {
    const Problem& p = problem();
    CVec F(p.sg->size(), cplx(1e-3)), out(p.bg->size());
    for (auto _ : st) {
        kernels::inverse_reference(F.data(), *p.sg, p.bg->nodes().data(), p.bg->size(), out.data());
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_voice(benchmark::State& st) {
    const auto bg = BallGrid::build(1.5, 40, 64);
    const auto f = sample(standard_bumps()[0], bg);
    const auto pg = PhaseGrid::make(TranslationGrid::build({1.0, 4, 0.5, 6}), SpectralGrid::build(12.0, 65, 16));
    const Window psi = gaussian_window(4.0);
    for (auto _ : st) {
        auto V = st.range(0) ? voice_forward(f, psi, pg) : voice_forward_reference(f, psi, pg);
        benchmark::DoNotOptimize(V.values.data());
    }
}

}  // namespace

BENCHMARK(BM_forward)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_forward_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_inverse)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_inverse_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_voice)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
