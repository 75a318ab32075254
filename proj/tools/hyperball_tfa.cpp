// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

// hyperball-tfa run --config c.json [--set k=v]... [--threads N] [--out dir]
// hyperball-tfa fixtures [--out dir]
// hyperball-tfa defaults [--out file]

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hyperball/experiments.hpp"
#include "hyperball/kernels.hpp"

#ifndef HYPERBALL_SOURCE_DIR
#define HYPERBALL_SOURCE_DIR "."
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kAssertion = 1, kConfig = 2, kNumeric = 3 };

void apply_threads(int threads) {
    if (threads <= 0) {
        if (const char* env = std::getenv("HYPERBALL_THREADS")) {
            try {
                threads = std::stoi(env);
            } catch (const std::exception&) {
                throw hyperball::ConfigError("HYPERBALL_THREADS must be an integer, got '" + std::string(env) + "'");
            }
            if (threads <= 0) throw hyperball::ConfigError("HYPERBALL_THREADS must be positive");
        }
    }
    if (threads > 0) {
        hyperball::kernels::set_thread_cap(threads);
        omp_set_num_threads(threads);
    }
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << j.dump(2) << '\n';
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& sets, int threads, const fs::path& out) {
    json cfg = json::object();
    if (!config_path.empty()) {
        std::ifstream is(config_path);
        if (!is) throw hyperball::ConfigError("cannot open config file '" + config_path + "'");
        try {
            cfg = json::parse(is);
        } catch (const json::parse_error& e) {
            throw hyperball::ConfigError("config file '" + config_path + "' is not valid JSON: " + e.what());
        }
    }
    for (const auto& s : sets) hyperball::apply_override(cfg, s);
    const hyperball::ExperimentConfig c = hyperball::parse_config(cfg);
    apply_threads(threads);

    const hyperball::Report r = hyperball::run_experiment(c, out);
    write_json(out / (c.experiment + "_report.json"), r.to_json());
    for (const auto& a : r.assertions)
        std::printf("%s %s value=%.6g threshold=%.6g\n", a.pass ? "PASS" : "FAIL", a.name.c_str(), a.value,
                    a.threshold);
    std::printf("%s: %s in %.1f s\n", c.experiment.c_str(), r.all_pass() ? "ok" : "assertion failure",
                r.wall_time_s);
    return r.all_pass() ? kOk : kAssertion;
}

int cmd_fixtures(const fs::path& out) {
    fs::create_directories(out);
    const fs::path script = fs::path(HYPERBALL_SOURCE_DIR) / "tools" / "gen_reference_values.py";
    const std::string cmd = "python3 \"" + script.string() + "\" \"" + (out / "reference_values.txt").string() + "\"";
    if (std::system(cmd.c_str()) != 0) {
        std::fprintf(stderr, "fixtures: '%s' failed (needs python3 with mpmath)\n", cmd.c_str());
        return kNumeric;
    }
    json bumps = json::array();
    for (const auto& b : hyperball::standard_bumps())
        bumps.push_back({{"name", b.name}, {"rho0", b.rho0}, {"center", {b.center.real(), b.center.imag()}},
                         {"freq", b.freq}});
    json family = json::array();
    for (const auto& b : hyperball::random_bumps(20, 1))
        family.push_back({{"name", b.name}, {"rho0", b.rho0}, {"center", {b.center.real(), b.center.imag()}},
                          {"freq", b.freq}});
    write_json(out / "signals.json", {{"version", 1}, {"standard", bumps}, {"family_seed_1", family}});
    std::printf("wrote %s\n", out.string().c_str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Windowed Helgason-Fourier transforms, coorbit frames and N-term approximation on the ball"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> sets;
    int threads = 0;
    std::string out_dir = ".";
    auto* run = app.add_subcommand("run", "Run one experiment and write its report and CSVs");
    run->add_option("--config", config_path, "JSON config (missing keys take their defaults)");
    run->add_option("--set", sets, "Override one key, e.g. --set frame.deltas=[0.5,0.25]");
    run->add_option("--threads", threads, "Worker cap (fallback: HYPERBALL_THREADS)")->check(CLI::PositiveNumber);
    run->add_option("--out", out_dir, "Output directory");

    std::string fixtures_dir = std::string(HYPERBALL_SOURCE_DIR) + "/tests/fixtures";
    auto* fix = app.add_subcommand("fixtures", "Regenerate the high-precision test fixtures");
    fix->add_option("--out", fixtures_dir, "Fixture directory");

    std::string defaults_out;
    auto* defs = app.add_subcommand("defaults", "Print (or write) the default configuration");
    defs->add_option("--out", defaults_out, "Write to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*run) return cmd_run(config_path, sets, threads, out_dir);
        if (*fix) return cmd_fixtures(fixtures_dir);
        if (*defs) {
            const json d = hyperball::default_config_json();
            if (defaults_out.empty())
                std::cout << d.dump(2) << '\n';
            else
                write_json(defaults_out, d);
            return kOk;
        }
    } catch (const hyperball::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return kNumeric;
    }
    return kOk;
}
