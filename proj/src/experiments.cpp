// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#include "hyperball/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "hyperball/csv.hpp"
#include "hyperball/helgason.hpp"
#include "hyperball/nterm.hpp"
#include "hyperball/summation.hpp"
#include "hyperball/voice.hpp"

namespace hyperball {

using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

// ---- config --------------------------------------------------------------------------------

json window_json(const WindowSpec& w) { return {{"kind", w.kind}, {"beta", w.beta}, {"sigma", w.sigma}}; }

json op_json(const FrameOperatorSpec& s) {
    return {{"local_radial", s.local_radial},
            {"local_angular", s.local_angular},
            {"oversample", s.oversample},
            {"lambda_nodes", s.lambda_nodes}};
}

void reject_unknown(const json& user, const json& defaults, const std::string& prefix) {
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        if (!defaults.contains(it.key())) throw ConfigError("unknown config key '" + key + "'");
        const json& d = defaults.at(it.key());
        if (d.is_object()) {
            if (!it.value().is_object()) throw ConfigError("config key '" + key + "' must be an object");
            reject_unknown(it.value(), d, key);
        }
    }
}

template <class T>
T get(const json& j, const std::string& path) {
    const json* cur = &j;
    std::string rest = path;
    for (;;) {
        const auto dot = rest.find('.');
        const std::string head = rest.substr(0, dot);
        cur = &cur->at(head);
        if (dot == std::string::npos) break;
        rest = rest.substr(dot + 1);
    }
    try {
        return cur->get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config key '" + path + "' has the wrong type");
    }
}

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) throw ConfigError("config key '" + key + "' " + what);
}

// regions (sub-disks for evaluation) skip the T_max >= 1, N >= 16 floor of the full grids
void check_ball(const BallGridSpec& b, const std::string& key, bool region = false) {
    if (region) {
        require(b.T_max > 0.0 && b.T_max <= 8.0, key + ".T_max", "must lie in (0, 8]");
        require(b.N_t >= 1 && b.N_t <= 4000, key + ".N_t", "must lie in [1, 4000]");
        require(b.N_theta >= 1 && b.N_theta <= 4096, key + ".N_theta", "must lie in [1, 4096]");
    } else {
        require(b.T_max >= 1.0 && b.T_max <= 8.0, key + ".T_max", "must lie in [1, 8]");
        require(b.N_t >= 16 && b.N_t <= 4000, key + ".N_t", "must lie in [16, 4000]");
        require(b.N_theta >= 16 && b.N_theta <= 4096, key + ".N_theta", "must lie in [16, 4096]");
    }
}

// coarse grids (phase-space kernels) skip the Lambda >= 5, N_lambda >= 64 floor
void check_spectral(const SpectralGridSpec& s, const std::string& key, bool coarse = false) {
    if (coarse) {
        require(s.Lambda > 0.0 && s.Lambda <= 1000.0, key + ".Lambda", "must lie in (0, 1000]");
        require(s.N_lambda >= 3 && s.N_lambda <= 100001, key + ".N_lambda", "must lie in [3, 100001]");
    } else {
        require(s.Lambda >= 5.0 && s.Lambda <= 1000.0, key + ".Lambda", "must lie in [5, 1000]");
        require(s.N_lambda >= 64 && s.N_lambda <= 100001, key + ".N_lambda", "must lie in [64, 100001]");
    }
    require(s.N_zeta >= 1 && s.N_zeta <= 4096, key + ".N_zeta", "must lie in [1, 4096]");
}

void check_translations(const TranslationGridSpec& t, const std::string& key) {
    require(t.T_max > 0.0 && t.T_max <= 8.0, key + ".T_max", "must lie in (0, 8]");
    require(t.N_t >= 1 && t.N_t <= 400, key + ".N_t", "must lie in [1, 400]");
    require(t.arc > 0.0, key + ".arc", "must be positive");
    require(t.min_angles >= 1, key + ".min_angles", "must be >= 1");
}

WindowSpec read_window(const json& j, const std::string& key) {
    WindowSpec w;
    w.kind = get<std::string>(j, key + ".kind");
    w.beta = get<double>(j, key + ".beta");
    w.sigma = get<double>(j, key + ".sigma");
    require(w.kind == "gaussian" || w.kind == "polynomial", key + ".kind", "must be 'gaussian' or 'polynomial'");
    require(w.beta > 0.0, key + ".beta", "must be positive");
    require(w.sigma > 0.0, key + ".sigma", "must be positive");
    return w;
}

json parse_value(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception&) {
        return json(text);
    }
}

// ---- numerics helpers ----------------------------------------------------------------------

double rel_l2(const CVec& approx, const CVec& exact, const std::vector<double>& w) {
    CompensatedSum num, den;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        num.add(std::norm(approx[i] - exact[i]) * w[i]);
        den.add(std::norm(exact[i]) * w[i]);
    }
    return std::sqrt(num.value() / den.value());
}

std::ofstream open_csv(const std::filesystem::path& dir, const std::string& name) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
    return os;
}

const BumpFixture& fixture_named(const std::vector<BumpFixture>& all, const std::string& name) {
    for (const auto& b : all)
        if (b.name == name) return b;
    throw DomainError("unknown fixture " + name);
}

double finite_or_inf(double x) { return std::isfinite(x) ? x : std::numeric_limits<double>::infinity(); }

// ---- experiments ---------------------------------------------------------------------------

void run_plancherel(const ExperimentConfig& c, const std::filesystem::path& out, Report& r) {
    auto bg = BallGrid::build(c.ball_grid);
    auto sg = SpectralGrid::build(c.spectral_grid);
    const auto bumps = standard_bumps();
    std::vector<SampledBallFunction> fs;
    std::vector<SpectralFunction> Fs;
    auto os = open_csv(out, "plancherel.csv");
    csv::Writer w(os, {"fixture", "norm_ball", "norm_spectral", "rel_err", "spectral_tail"});
    double worst = 0.0;
    for (const auto& b : bumps) {
        fs.push_back(sample(b, bg));
        Fs.push_back(helgason_forward(fs.back(), sg));
        const double nf = norm_ball(fs.back()), nF = norm_spectral(Fs.back());
        const double rel = std::abs(nF * nF - nf * nf) / (nf * nf);
        const double tail = spectral_tail_fraction(Fs.back(), 0.9 * c.spectral_grid.Lambda);
        worst = std::max(worst, rel);
        w.field(b.name).field(nf).field(nF).field(rel).field(tail);
        w.end_row();
        r.metrics["rel_err"][b.name] = rel;
    }
    double worst_pol = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const std::size_t k = (i + 1) % fs.size();
        const cplx lhs = inner_spectral(Fs[i], Fs[k]);
        const cplx rhs = inner_ball(fs[i], fs[k]);
        worst_pol = std::max(worst_pol, std::abs(lhs - rhs) / (norm_ball(fs[i]) * norm_ball(fs[k])));
    }
    r.metrics["relative_error"] = worst;
    r.metrics["polarization_error"] = worst_pol;
    r.check_le("plancherel_relative_error", worst, 1e-3);
    r.check_le("polarization_relative_error", worst_pol, 1e-3);
}

void run_inversion(const ExperimentConfig& c, const std::filesystem::path& out, Report& r) {
    auto eval = BallGrid::build_region(c.eval_region.T_max, c.eval_region.N_t, c.eval_region.N_theta);
    auto round_trip = [&](const BallGridSpec& bs, const SpectralGridSpec& ss) {
        auto bg = BallGrid::build(bs);
        auto sg = SpectralGrid::build(ss);
        std::vector<double> errs;
        for (const auto& b : standard_bumps()) {
            const auto F = helgason_forward(sample(b, bg), sg);
            const auto g = helgason_inverse(F, eval);
            errs.push_back(rel_l2(g.values, sample(b, eval).values, eval->weights()));
        }
        return errs;
    };
    const auto base = round_trip(c.ball_grid, c.spectral_grid);
    BallGridSpec b2 = c.ball_grid;
    b2.N_t *= 2;
    SpectralGridSpec s2 = c.spectral_grid;
    s2.N_lambda = 2 * s2.N_lambda - 1;
    const auto fine = round_trip(b2, s2);
    const auto bumps = standard_bumps();
    auto os = open_csv(out, "inversion.csv");
    csv::Writer w(os, {"fixture", "rel_err", "rel_err_doubled"});
    double worst = 0.0, worst_ratio = 0.0;
    for (std::size_t i = 0; i < bumps.size(); ++i) {
        w.field(bumps[i].name).field(base[i]).field(fine[i]);
        w.end_row();
        worst = std::max(worst, base[i]);
        worst_ratio = std::max(worst_ratio, fine[i] / base[i]);
        r.metrics["rel_err"][bumps[i].name] = base[i];
        r.metrics["rel_err_doubled"][bumps[i].name] = fine[i];
    }
    r.metrics["relative_error"] = worst;
    r.metrics["doubling_ratio"] = worst_ratio;
    r.check_le("round_trip_relative_error", worst, 1e-2);
    r.check_le("doubling_error_ratio", worst_ratio, 1.1);
}

std::shared_ptr<const PhaseGrid> voice_phase_grid(const ExperimentConfig& c) {
    return PhaseGrid::make(TranslationGrid::build(c.translations), SpectralGrid::build(c.voice_spectral));
}

void run_orthogonality(const ExperimentConfig& c, const std::filesystem::path& out, Report& r) {
    auto bg = BallGrid::build(c.voice_grid);
    auto pg = voice_phase_grid(c);
    const auto bumps = standard_bumps();
    const Window W[2] = {make_window(c.window), make_window(c.second_window)};
    const std::string wname[2] = {c.window.kind, c.second_window.kind};
    const SampledBallFunction F[2] = {sample(fixture_named(bumps, "centered"), bg),
                                      sample(fixture_named(bumps, "modulated"), bg)};
    const std::string fname[2] = {"centered", "modulated"};
    PhaseFunction V[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) V[a][b] = voice_forward(F[b], W[a], pg);
    if (c.large_csv) {
        auto os = open_csv(out, "voice_transform.csv");
        write_csv(os, V[0][0]);
    }
    auto os = open_csv(out, "orthogonality.csv");
    csv::Writer w(os, {"window_1", "window_2", "signal_1", "signal_2", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                       "rel_residual"});
    double worst = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int a2 = 0; a2 < 2; ++a2)
            for (int b = 0; b < 2; ++b)
                for (int b2 = 0; b2 < 2; ++b2) {
                    CompensatedSumC s;
                    for (std::size_t i = 0; i < pg->size(); ++i)
                        s.add(V[a][b].values[i] * std::conj(V[a2][b2].values[i]) * pg->weight(i));
                    const cplx lhs = s.value();
                    const cplx rhs = std::conj(window_inner(W[a], W[a2])) * inner_ball(F[b], F[b2]);
                    const double rel = std::abs(lhs - rhs) / std::abs(rhs);
                    worst = std::max(worst, rel);
                    w.field(wname[a]).field(wname[a2]).field(fname[b]).field(fname[b2]);
                    w.field(lhs.real()).field(lhs.imag()).field(rhs.real()).field(rhs.imag()).field(rel);
                    w.end_row();
                }
    r.metrics["phase_nodes"] = pg->size();
    r.metrics["relative_residual"] = worst;
    r.check_le("orthogonality_relative_residual", worst, 1e-2);
}

void run_voice_roundtrip(const ExperimentConfig& c, const std::filesystem::path& out, Report& r) {
    auto bg = BallGrid::build(c.voice_grid);
    auto pg = voice_phase_grid(c);
    const Window psi = make_window(c.window), gamma = make_window(c.second_window);
    auto os = open_csv(out, "voice_roundtrip.csv");
    csv::Writer w(os, {"fixture", "rel_err"});
    double worst = 0.0;
    const auto bumps = standard_bumps();
    for (const std::string name : {"centered", "modulated"}) {
        const auto f = sample(fixture_named(bumps, name), bg);
        const auto V = voice_forward(f, psi, pg);
        const auto g = voice_invert(V, gamma, psi, bg);
        const double e = rel_l2(g.values, f.values, bg->weights());
        worst = std::max(worst, e);
        r.metrics["rel_err"][name] = e;
        w.field(name).field(e);
        w.end_row();
    }
    r.metrics["relative_error"] = worst;
    r.check_le("voice_inversion_relative_error", worst, 2e-2);
}

// bump times a local plane wave exp(i lambda s_zeta(z)), s = 1/2 ln P_{0,zeta}
CVec modulated_bump(const BallGrid& g, cplx center, double rho0, double lambda, double zeta) {
    const BumpFixture b{"probe", rho0, center, 0.0};
    const cplx zt = std::polar(1.0, zeta);
    CVec v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const cplx z = g.node(i);
        const cplx bz = b(z);
        v[i] = bz == cplx(0.0) ? cplx(0.0) : bz * std::polar(1.0, 0.5 * lambda * std::log(disk::poisson_base(z, zt)));
    }
    return v;
}

struct ChainResult {
    bool contractive = false;
    double atomic = 0.0, sampled = 0.0;
    int iterations = 0;
    bool converged = false;
};

void run_frame_sweep(const ExperimentConfig& c, const std::filesystem::path& out, Report& r) {
    const FrameSpec& fsp = c.frame;
    const Window psi = normalized(make_window(c.window));
    auto grid = BallGrid::build(fsp.grid);
    auto cgrid = BallGrid::build(fsp.coarse_grid);
    auto coarse = PhaseGrid::make(TranslationGrid::build(fsp.coarse_translations),
                                  SpectralGrid::build_coarse(fsp.coarse_spectral));
    const PNorm p = parse_pnorm(fsp.p);
    const auto& W = grid->weights();

    // signals and their coorbit norms, independent of the partition
    const auto family = random_bumps(static_cast<std::size_t>(fsp.signals), c.seed);
    std::vector<CVec> fam;
    std::vector<double> coorbit;
    for (const auto& b : family) {
        fam.push_back(sample(b, grid).values);
        coorbit.push_back(coorbit_norm(voice_forward(sample(b, cgrid), psi, coarse), p, c.weight));
    }
    const auto bumps = standard_bumps();
    std::vector<CVec> fixtures;
    for (const auto& b : bumps) fixtures.push_back(sample(b, grid).values);

    auto os = open_csv(out, "frame_sweep.csv");
    csv::Writer w(os, {"delta", "h", "gamma_est", "op_norm", "A", "A_prime", "recon_err"});
    json rows = json::array();
    std::vector<double> recon, sampled;
    ChainResult last;
    double last_norm = 0.0;
    FrameBounds last_bounds;
    for (std::size_t i = 0; i < fsp.deltas.size(); ++i) {
        const double delta = fsp.deltas[i], h = fsp.hs[i];
        PartitionOfUnity pou(build_ball_covering(delta, fsp.T_work, c.seed), build_frequency_covering(h, fsp.Lambda),
                             fsp.zeta0);
        const PartitionCheck pc = check_partition(pou, c.seed, 10000);
        const double q_max = max_weight_quotient(pou, c.weight), q_bound = weight_quotient_bound(pou, c.weight);
        const OscillationReport osc =
            oscillation_integral(pou, PhasePoint::make(0.0, 0.0, fsp.zeta0), psi, coarse, cgrid, fsp.probes);
        FrameOperator op(pou, psi, grid, fsp.op);
        const LinearMap T = [&](const CVec& x) { return op.apply_T(x); };
        const LinearMap S = [&](const CVec& x) { return op.apply_S(x); };

        std::vector<CVec> basis = fixtures;
        const cplx centers[] = {0.0, std::tanh(delta), std::polar(std::tanh(delta), 2.0 * kPi / 3.0)};
        for (cplx z : centers)
            for (double lam : {0.0, 4.0, 8.0, 12.0})
                for (double zeta : {0.0, 0.5 * kPi, kPi}) basis.push_back(modulated_bump(*grid, z, 0.5, lam, zeta));
        const double normT = restricted_distance_to_identity(T, basis, W);
        const double normS = restricted_distance_to_identity(S, basis, W);

        ChainResult ch;
        ch.contractive = normT < 1.0 && normS < 1.0;
        for (const CVec& f : fixtures) {
            double ea, es;
            if (ch.contractive) {
                const NeumannResult G = neumann_invert(T, f, normT, fsp.tol, fsp.max_iter, W);
                ea = rel_l2(op.synthesis(op.dual_coefficients(G.solution)), f, W);
                const NeumannResult H = neumann_invert(S, op.dual_synthesis(op.samples(f)), normS, fsp.tol,
                                                       fsp.max_iter, W);
                es = rel_l2(H.solution, f, W);
                ch.iterations = std::max({ch.iterations, G.iterations, H.iterations});
            } else {
                // no Neumann series; zeroth-order approximations T f and S f
                ea = rel_l2(op.apply_T(f), f, W);
                es = rel_l2(op.apply_S(f), f, W);
            }
            ch.atomic = std::max(ch.atomic, ea);
            ch.sampled = std::max(ch.sampled, es);
        }
        ch.converged = ch.contractive;

        const auto mw = node_weights(pou, c.weight);
        std::vector<double> seq;
        for (const CVec& f : fam) seq.push_back(sequence_norm({op.samples(f), mw}, p));
        const FrameBounds fb = empirical_frame_bounds(seq, coorbit);

        if (c.large_csv) {
            auto cs = open_csv(out, "frame_coefficients_" + std::to_string(i) + ".csv");
            write_csv(cs, CoefficientSequence{op.dual_coefficients(fixtures[0]), mw}, pou);
        }

        w.field(delta).field(h).field(osc.gamma).field(normT).field(fb.A).field(fb.A_prime).field(ch.atomic);
        w.end_row();
        rows.push_back({{"delta", delta},
                        {"h", h},
                        {"J", pou.J()},
                        {"K", pou.K()},
                        {"r0", pou.ball().r0},
                        {"s0", pou.freq().s0},
                        {"nu_ratio", pou.freq().nu_ratio()},
                        {"partition_sum_deviation", pc.max_sum_deviation},
                        {"support_violations", pc.support_violations},
                        {"weight_quotient", q_max},
                        {"weight_quotient_bound", q_bound},
                        {"gamma_est", osc.gamma},
                        {"C_psi", osc.C_psi},
                        {"op_norm", normT},
                        {"op_norm_S", normS},
                        {"contractive", ch.contractive},
                        {"neumann_iterations", ch.iterations},
                        {"atomic_err", ch.atomic},
                        {"sampled_err", ch.sampled},
                        {"A", fb.A},
                        {"A_prime", fb.A_prime},
                        {"ratio", fb.A_prime / fb.A}});
        r.check_le("partition_sum_deviation[" + std::to_string(i) + "]", pc.max_sum_deviation, 1e-12);
        r.check_le("weight_quotient_over_bound[" + std::to_string(i) + "]", q_max / q_bound, 1.0);
        recon.push_back(ch.atomic);
        sampled.push_back(ch.sampled);
        last = ch;
        last_norm = normT;
        last_bounds = fb;
    }
    r.metrics["sweep"] = rows;
    r.metrics["contractive"] = last.contractive;

    double growth = 0.0;
    for (std::size_t i = 1; i < recon.size(); ++i)
        growth = std::max({growth, recon[i] / recon[i - 1], sampled[i] / sampled[i - 1]});
    r.check_le("op_norm_refined", last_norm, 1.0 - 1e-12);
    r.check_le("neumann_iterations", last.converged ? last.iterations : std::numeric_limits<double>::infinity(),
               fsp.max_iter);
    r.check_le("atomic_reconstruction_error", last.atomic, 1e-2);
    r.check_le("sampled_reconstruction_error", last.sampled, 2e-2);
    if (recon.size() > 1) r.check_le("error_growth_under_refinement", growth, 1.1);
    r.check_ge("frame_bound_A", last_bounds.A, std::numeric_limits<double>::min());
    r.check_le("frame_bound_A_prime", finite_or_inf(last_bounds.A_prime), std::numeric_limits<double>::max());
    if (fsp.ratio_limit > 0.0) r.check_le("frame_bound_ratio", last_bounds.A_prime / last_bounds.A, fsp.ratio_limit);
}

// uniform in [0,1) from the top 53 bits
double unit(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

std::vector<double> random_decreasing(std::mt19937_64& g, int len) {
    std::vector<double> a(static_cast<std::size_t>(len));
    const int shape = static_cast<int>(g() % 3);
    const double e = 0.3 + 2.5 * unit(g);
    for (int i = 0; i < len; ++i) {
        double v;
        if (shape == 0)
            v = std::pow(i + 1.0, -e) * (1.0 + 0.5 * unit(g));
        else if (shape == 1)
            v = std::exp(-e * 0.05 * i) * (0.5 + unit(g));
        else
            v = 1e-3 + unit(g);
        a[static_cast<std::size_t>(i)] = v;
    }
    std::sort(a.begin(), a.end(), std::greater<>());
    // a few exact ties
    for (int i = 1; i < len; i += 7) a[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i - 1)];
    return a;
}

void run_nterm(const ExperimentConfig& c, const std::filesystem::path& out, Report& r) {
    std::mt19937_64 g(c.seed);
    auto os = open_csv(out, "nterm.csv");
    csv::Writer w(os, {"p", "q", "sequence", "lower", "middle", "upper"});
    double worst_gap = std::numeric_limits<double>::infinity();
    double worst_c = 0.0;
    for (const auto& [p, q] : c.nterm.pq) {
        for (int s = 0; s < c.nterm.sequences; ++s) {
            const auto a = random_decreasing(g, c.nterm.length);
            const NTermLemma L = n_term_lemma_check(a, p, q);
            worst_gap = std::min(worst_gap, (L.middle - L.lower) / L.lower);
            worst_c = std::max(worst_c, L.middle / L.upper);
            w.field(p).field(q).field(static_cast<long long>(s)).field(L.lower).field(L.middle).field(L.upper);
            w.end_row();
        }
    }
    // E_N on random weighted coefficient sequences
    long long violations = 0;
    for (int s = 0; s < 20; ++s) {
        CoefficientSequence cs;
        for (int i = 0; i < c.nterm.length; ++i) {
            cs.values.emplace_back(unit(g) - 0.5, unit(g) - 0.5);
            cs.weights.push_back(1.0 + 3.0 * unit(g));
        }
        for (double q : {1.0, 2.0, std::numeric_limits<double>::infinity()}) {
            const auto E = n_term_errors(cs, q);
            for (std::size_t N = 1; N < E.size(); ++N)
                if (E[N] > E[N - 1]) ++violations;
            if (E.back() != 0.0) ++violations;
        }
    }
    r.metrics["lower_bound_min_relative_gap"] = worst_gap;
    r.metrics["empirical_upper_constant"] = worst_c;
    r.metrics["E_N_monotonicity_violations"] = violations;
    r.check_ge("lower_bound_relative_gap", worst_gap, -1e-12);
    r.check_le("E_N_monotonicity_violations", static_cast<double>(violations), 0.0);
}

void run_schur(const ExperimentConfig& c, const std::filesystem::path& out, Report& r) {
    const Window psi = normalized(make_window(c.window));
    auto grid = BallGrid::build(c.schur.grid);
    const PhaseGrid pg(TranslationGrid::build(c.schur.translations), SpectralGrid::build_coarse(c.schur.spectral));
    const CVec K = reproducing_kernel_matrix(psi, pg, *grid);
    std::vector<double> xi(pg.size()), m(pg.size());
    for (std::size_t i = 0; i < pg.size(); ++i) {
        xi[i] = pg.weight(i);
        m[i] = weight_m(c.weight, pg.w(i), pg.lambda(i));
    }
    const SchurBounds sb = kernel_schur_bounds(K, xi, m);
    const double C = std::max(sb.row, sb.col);
    std::mt19937_64 g(c.seed);
    auto os = open_csv(out, "schur.csv");
    csv::Writer w(os, {"p", "sample", "ratio", "bound"});
    double worst = 0.0;
    for (PNorm p : {PNorm::One, PNorm::Two, PNorm::Inf}) {
        const std::string pn = p == PNorm::One ? "1" : p == PNorm::Two ? "2" : "inf";
        for (int s = 0; s < c.schur.samples; ++s) {
            CVec f(pg.size());
            // random phases and magnitudes, scaled by 1/m so the weight matters
            for (std::size_t i = 0; i < f.size(); ++i)
                f[i] = cplx(unit(g) - 0.5, unit(g) - 0.5) / (m[i] * (0.2 + unit(g)));
            const double ratio = weighted_lp(apply_kernel(K, xi, f), xi, m, p) / weighted_lp(f, xi, m, p);
            worst = std::max(worst, ratio / C);
            w.field(pn).field(static_cast<long long>(s)).field(ratio).field(C);
            w.end_row();
        }
    }
    const double n2 = kernel_l2_norm(K, xi, m);
    const double rt = std::sqrt(sb.row * sb.col);
    r.metrics["phase_nodes"] = pg.size();
    r.metrics["schur_row"] = sb.row;
    r.metrics["schur_col"] = sb.col;
    r.metrics["l2_norm"] = n2;
    r.metrics["riesz_thorin_bound"] = rt;
    r.metrics["worst_young_ratio"] = worst;
    r.check_le("young_ratio_over_bound", worst, 1.0 + 1e-12);
    r.check_le("l2_norm_over_interpolation_bound", n2 / rt, 1.0 + 1e-10);
}

}  // namespace

json default_config_json() { return config_to_json(ExperimentConfig{}); }

json config_to_json(const ExperimentConfig& c) {
    json pq = json::array();
    for (const auto& [p, q] : c.nterm.pq) pq.push_back({p, q});
    return {{"experiment", c.experiment},
            {"seed", c.seed},
            {"ball_grid", c.ball_grid},
            {"spectral_grid", c.spectral_grid},
            {"eval_region", c.eval_region},
            {"voice_grid", c.voice_grid},
            {"voice_spectral", c.voice_spectral},
            {"translations", c.translations},
            {"window", window_json(c.window)},
            {"second_window", window_json(c.second_window)},
            {"weight", {{"s", c.weight.s}, {"r", c.weight.r}}},
            {"frame",
             {{"deltas", c.frame.deltas},
              {"hs", c.frame.hs},
              {"Lambda", c.frame.Lambda},
              {"T_work", c.frame.T_work},
              {"zeta0", c.frame.zeta0},
              {"grid", c.frame.grid},
              {"operator", op_json(c.frame.op)},
              {"tol", c.frame.tol},
              {"max_iter", c.frame.max_iter},
              {"signals", c.frame.signals},
              {"p", c.frame.p},
              {"probes", c.frame.probes},
              {"coarse_grid", c.frame.coarse_grid},
              {"coarse_translations", c.frame.coarse_translations},
              {"coarse_spectral", c.frame.coarse_spectral},
              {"ratio_limit", c.frame.ratio_limit}}},
            {"nterm", {{"sequences", c.nterm.sequences}, {"length", c.nterm.length}, {"pq", pq}}},
            {"schur",
             {{"translations", c.schur.translations},
              {"spectral", c.schur.spectral},
              {"grid", c.schur.grid},
              {"samples", c.schur.samples}}},
            {"large_csv", c.large_csv}};
}

ExperimentConfig parse_config(const json& user) {
    if (!user.is_object()) throw ConfigError("config must be a JSON object");
    const json defaults = default_config_json();
    reject_unknown(user, defaults, "");
    json j = defaults;
    j.merge_patch(user);

    ExperimentConfig c;
    c.experiment = get<std::string>(j, "experiment");
    const auto& ids = experiment_ids();
    require(std::find(ids.begin(), ids.end(), c.experiment) != ids.end(), "experiment",
            "must be one of plancherel, inversion, orthogonality, voice-roundtrip, frame-sweep, nterm, schur");
    c.seed = get<std::uint64_t>(j, "seed");
    c.ball_grid = get<BallGridSpec>(j, "ball_grid");
    check_ball(c.ball_grid, "ball_grid");
    c.spectral_grid = get<SpectralGridSpec>(j, "spectral_grid");
    check_spectral(c.spectral_grid, "spectral_grid");
    c.eval_region = get<BallGridSpec>(j, "eval_region");
    check_ball(c.eval_region, "eval_region", true);
    c.voice_grid = get<BallGridSpec>(j, "voice_grid");
    check_ball(c.voice_grid, "voice_grid");
    c.voice_spectral = get<SpectralGridSpec>(j, "voice_spectral");
    check_spectral(c.voice_spectral, "voice_spectral");
    c.translations = get<TranslationGridSpec>(j, "translations");
    check_translations(c.translations, "translations");
    c.window = read_window(j, "window");
    c.second_window = read_window(j, "second_window");
    c.weight.s = get<double>(j, "weight.s");
    c.weight.r = get<double>(j, "weight.r");
    require(c.weight.s >= 0.0 && c.weight.s <= 4.0, "weight.s", "must lie in [0, 4]");
    require(c.weight.r >= 0.0 && c.weight.r <= 4.0, "weight.r", "must lie in [0, 4]");

    FrameSpec& f = c.frame;
    f.deltas = get<std::vector<double>>(j, "frame.deltas");
    f.hs = get<std::vector<double>>(j, "frame.hs");
    require(!f.deltas.empty() && f.deltas.size() == f.hs.size(), "frame.hs", "must match frame.deltas in length");
    for (double d : f.deltas) require(d > 0.0 && d <= 1.0, "frame.deltas", "entries must lie in (0, 1]");
    for (double h : f.hs) require(h > 0.0 && h <= 4.0, "frame.hs", "entries must lie in (0, 4]");
    f.Lambda = get<double>(j, "frame.Lambda");
    require(f.Lambda > 0.0 && f.Lambda <= 200.0, "frame.Lambda", "must lie in (0, 200]");
    f.T_work = get<double>(j, "frame.T_work");
    f.grid = get<BallGridSpec>(j, "frame.grid");
    check_ball(f.grid, "frame.grid");
    require(f.T_work > 0.0 && f.T_work <= f.grid.T_max, "frame.T_work", "must lie in (0, frame.grid.T_max]");
    f.zeta0 = get<double>(j, "frame.zeta0");
    f.op.local_radial = get<int>(j, "frame.operator.local_radial");
    f.op.local_angular = get<int>(j, "frame.operator.local_angular");
    f.op.oversample = get<int>(j, "frame.operator.oversample");
    f.op.lambda_nodes = get<int>(j, "frame.operator.lambda_nodes");
    require(f.op.local_radial >= 2 && f.op.local_angular >= 4, "frame.operator", "local quadrature too small");
    require(f.op.oversample >= 2, "frame.operator.oversample", "must be >= 2");
    require(f.op.lambda_nodes >= 2, "frame.operator.lambda_nodes", "must be >= 2");
    f.tol = get<double>(j, "frame.tol");
    require(f.tol > 0.0 && f.tol < 1.0, "frame.tol", "must lie in (0, 1)");
    f.max_iter = get<int>(j, "frame.max_iter");
    require(f.max_iter >= 1, "frame.max_iter", "must be >= 1");
    f.signals = get<int>(j, "frame.signals");
    require(f.signals >= 2, "frame.signals", "must be >= 2");
    f.p = get<std::string>(j, "frame.p");
    require(f.p == "1" || f.p == "2" || f.p == "inf", "frame.p", "must be \"1\", \"2\" or \"inf\"");
    f.probes = get<int>(j, "frame.probes");
    require(f.probes >= 2 && f.probes <= 9, "frame.probes", "must lie in [2, 9]");
    f.coarse_grid = get<BallGridSpec>(j, "frame.coarse_grid");
    check_ball(f.coarse_grid, "frame.coarse_grid");
    f.coarse_translations = get<TranslationGridSpec>(j, "frame.coarse_translations");
    check_translations(f.coarse_translations, "frame.coarse_translations");
    f.coarse_spectral = get<SpectralGridSpec>(j, "frame.coarse_spectral");
    check_spectral(f.coarse_spectral, "frame.coarse_spectral", true);
    f.ratio_limit = get<double>(j, "frame.ratio_limit");
    require(f.ratio_limit >= 0.0, "frame.ratio_limit", "must be >= 0");

    c.nterm.sequences = get<int>(j, "nterm.sequences");
    c.nterm.length = get<int>(j, "nterm.length");
    require(c.nterm.sequences >= 1, "nterm.sequences", "must be >= 1");
    require(c.nterm.length >= 1 && c.nterm.length <= 10000000, "nterm.length", "must lie in [1, 1e7]");
    c.nterm.pq.clear();
    for (const auto& e : j.at("nterm").at("pq")) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ConfigError("config key 'nterm.pq' must hold [p, q] number pairs");
        const double p = e[0].get<double>(), q = e[1].get<double>();
        require(p > 0.0 && q > p, "nterm.pq", "needs 0 < p < q");
        c.nterm.pq.emplace_back(p, q);
    }

    c.schur.translations = get<TranslationGridSpec>(j, "schur.translations");
    check_translations(c.schur.translations, "schur.translations");
    c.schur.spectral = get<SpectralGridSpec>(j, "schur.spectral");
    check_spectral(c.schur.spectral, "schur.spectral", true);
    c.schur.grid = get<BallGridSpec>(j, "schur.grid");
    check_ball(c.schur.grid, "schur.grid");
    c.schur.samples = get<int>(j, "schur.samples");
    require(c.schur.samples >= 1, "schur.samples", "must be >= 1");
    c.large_csv = get<bool>(j, "large_csv");
    return c;
}

void apply_override(json& j, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    json* cur = &j;
    std::string rest = key;
    for (;;) {
        const auto dot = rest.find('.');
        const std::string head = rest.substr(0, dot);
        if (head.empty()) throw ConfigError("malformed config key '" + key + "'");
        if (dot == std::string::npos) {
            (*cur)[head] = parse_value(assignment.substr(eq + 1));
            return;
        }
        json& next = (*cur)[head];
        if (next.is_null()) next = json::object();
        if (!next.is_object()) throw ConfigError("config key '" + key + "' descends into a non-object");
        cur = &next;
        rest = rest.substr(dot + 1);
    }
}

Window make_window(const WindowSpec& w) {
    return w.kind == "gaussian" ? gaussian_window(w.beta) : polynomial_window(w.sigma);
}

void Report::check_le(const std::string& name, double value, double threshold) {
    assertions.push_back({name, threshold, value, value <= threshold});
}

void Report::check_ge(const std::string& name, double value, double threshold) {
    assertions.push_back({name, threshold, value, value >= threshold});
}

bool Report::all_pass() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

json Report::to_json() const {
    json as = json::array();
    for (const auto& a : assertions)
        as.push_back({{"name", a.name}, {"threshold", a.threshold}, {"value", a.value}, {"pass", a.pass}});
    return {{"experiment", experiment},
            {"config_echo", config_echo},
            {"metrics", metrics},
            {"assertions", as},
            {"wall_time_s", wall_time_s}};
}

std::vector<BumpFixture> random_bumps(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 g(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<BumpFixture> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double rad = 0.4 * std::sqrt(unit(g)), ang = 2.0 * kPi * unit(g);
        const double rho0 = 0.4 + 0.3 * unit(g);
        const double freq = 4.0 * unit(g);
        out.push_back({"random_" + std::to_string(i), rho0, std::polar(rad, ang), freq});
    }
    return out;
}

Report run_experiment(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);
    Report r;
    r.experiment = c.experiment;
    r.config_echo = config_to_json(c);
    if (c.experiment == "plancherel")
        run_plancherel(c, out_dir, r);
    else if (c.experiment == "inversion")
        run_inversion(c, out_dir, r);
    else if (c.experiment == "orthogonality")
        run_orthogonality(c, out_dir, r);
    else if (c.experiment == "voice-roundtrip")
        run_voice_roundtrip(c, out_dir, r);
    else if (c.experiment == "frame-sweep")
        run_frame_sweep(c, out_dir, r);
    else if (c.experiment == "nterm")
        run_nterm(c, out_dir, r);
    else if (c.experiment == "schur")
        run_schur(c, out_dir, r);
    else
        throw ConfigError("config key 'experiment' names an unknown experiment '" + c.experiment + "'");
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace hyperball
