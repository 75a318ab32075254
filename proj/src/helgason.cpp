// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#include "hyperball/helgason.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "hyperball/csv.hpp"
#include "hyperball/kernels.hpp"
#include "hyperball/special_functions.hpp"
#include "hyperball/summation.hpp"

namespace hyperball {

SpectralFunction helgason_forward(const SampledBallFunction& f, std::shared_ptr<const SpectralGrid> out) {
    const BallGrid& bg = *f.grid;
    CVec c(bg.size());
    for (std::size_t i = 0; i < bg.size(); ++i) c[i] = f.values[i] * bg.weight(i);
    SpectralFunction F(out);
    kernels::forward(bg.nodes().data(), c.data(), c.size(), *out, F.values.data());
    return F;
}

SampledBallFunction helgason_inverse(const SpectralFunction& F, std::shared_ptr<const BallGrid> out) {
    const SpectralGrid& sg = *F.grid;
    CVec Fw(sg.size());
    for (std::size_t i = 0; i < sg.size(); ++i) Fw[i] = F.values[i] * sg.weight(i, SpectralMeasure::Nu);
    SampledBallFunction f(out);
    kernels::inverse(Fw.data(), sg, out->nodes().data(), out->size(), f.values.data());
    return f;
}

CVec spherical_transform(const RadialProfile& g, const std::vector<double>& lambdas, const BallGrid& radial) {
    const auto& r = radial.r();
    const auto& w = radial.radial_weight();
    const std::size_t nr = r.size();
    CVec gv(nr);
    double total = 0.0, outer = 0.0;
    const std::size_t outer_start = nr - std::max<std::size_t>(1, nr / 10);
    for (std::size_t i = 0; i < nr; ++i) {
        gv[i] = g(r[i]);
        const double m = std::abs(gv[i]) * w[i];
        total += m;
        if (i >= outer_start) outer += m;
    }
    if (total > 0.0 && outer > 1e-10 * total) {
        std::ostringstream msg;
        msg << "spherical_transform: profile '" << g.name << "' carries " << outer / total
            << " of its mass in the outer radial range";
        throw TailError(msg.str());
    }
    CVec out(lambdas.size());
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        CompensatedSumC s;
        for (std::size_t i = 0; i < nr; ++i) {
            if (gv[i] == cplx(0.0)) continue;
            s.add(gv[i] * w[i] * spherical_function_x(-lambdas[k], r[i] * r[i], 1));
        }
        out[k] = s.value();
    }
    return out;
}

SampledBallFunction convolve(const SampledBallFunction& f, const RadialProfile& g, std::shared_ptr<const BallGrid> out) {
    const BallGrid& bg = *f.grid;
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < bg.size(); ++i)
        if (f.values[i] != cplx(0.0)) active.push_back(i);
    SampledBallFunction h(out);
    const long n_out = static_cast<long>(out->size());
#pragma omp parallel for schedule(static)
    for (long o = 0; o < n_out; ++o) {
        const cplx z = out->node(o);
        CompensatedSumC s;
        for (std::size_t i : active) {
            const double rho = std::abs(disk::mobius(z, bg.node(i)));
            s.add(f.values[i] * bg.weight(i) * g(rho));
        }
        h.values[o] = s.value();
    }
    return h;
}

RadialProfile radialize(const SampledBallFunction& f) {
    const BallGrid& bg = *f.grid;
    const int nt = bg.rings(), na = bg.angles();
    auto ring_mean = std::make_shared<CVec>(nt);
    for (int i = 0; i < nt; ++i) {
        CompensatedSumC s;
        for (int j = 0; j < na; ++j) s.add(f.values[static_cast<std::size_t>(i) * na + j]);
        (*ring_mean)[i] = s.value() / static_cast<double>(na);
    }
    // barycentric weights of the Gauss-Legendre rings
    const GaussLegendre gl = gauss_legendre(nt);
    auto bw = std::make_shared<std::vector<double>>(nt);
    for (int i = 0; i < nt; ++i) (*bw)[i] = ((i % 2) ? -1.0 : 1.0) * std::sqrt((1.0 - gl.x[i] * gl.x[i]) * gl.w[i]);
    auto ts = std::make_shared<std::vector<double>>(bg.t());
    RadialProfile p;
    p.name = "radialized";
    p.support = 1.0;
    p.g = [ring_mean, bw, ts](double rho) -> cplx {
        const double t = std::atanh(rho);
        cplx num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < ts->size(); ++i) {
            const double d = t - (*ts)[i];
            if (d == 0.0) return (*ring_mean)[i];
            const double c = (*bw)[i] / d;
            num += c * (*ring_mean)[i];
            den += c;
        }
        return num / den;
    };
    return p;
}

double spectral_tail_fraction(const SpectralFunction& F, double cut) {
    const SpectralGrid& sg = *F.grid;
    CompensatedSum all, tail;
    for (std::size_t i = 0; i < sg.size(); ++i) {
        const double e = std::norm(F.values[i]) * sg.weight(i, SpectralMeasure::Nu);
        all.add(e);
        if (std::abs(sg.lambda()[i / sg.n_zeta()]) > cut) tail.add(e);
    }
    return all.value() > 0.0 ? tail.value() / all.value() : 0.0;
}

double spatial_tail_fraction(const SampledBallFunction& f, double t_cut) {
    const BallGrid& bg = *f.grid;
    CompensatedSum all, tail;
    for (std::size_t i = 0; i < bg.size(); ++i) {
        const double e = std::norm(f.values[i]) * bg.weight(i);
        all.add(e);
        if (bg.t()[i / bg.angles()] > t_cut) tail.add(e);
    }
    return all.value() > 0.0 ? tail.value() / all.value() : 0.0;
}

void write_csv(std::ostream& os, const SampledBallFunction& f) {
    csv::Writer w(os, {"z_re", "z_im", "weight", "re", "im"});
    for (std::size_t i = 0; i < f.grid->size(); ++i) {
        const cplx z = f.grid->node(i);
        w.field(z.real()).field(z.imag()).field(f.grid->weight(i)).field(f.values[i].real()).field(f.values[i].imag());
        w.end_row();
    }
}

void write_csv(std::ostream& os, const SpectralFunction& F) {
    const SpectralGrid& sg = *F.grid;
    csv::Writer w(os, {"lambda", "zeta_angle", "nu_weight", "re", "im"});
    for (std::size_t i = 0; i < sg.size(); ++i) {
        const int k = static_cast<int>(i / sg.n_zeta()), j = static_cast<int>(i % sg.n_zeta());
        w.field(sg.lambda()[k]).field(sg.zeta_angle()[j]).field(sg.weight(i, SpectralMeasure::Nu));
        w.field(F.values[i].real()).field(F.values[i].imag());
        w.end_row();
    }
}

}  // namespace hyperball
