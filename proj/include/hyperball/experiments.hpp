// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hyperball-tfa contributors

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperball/fixtures.hpp"
#include "hyperball/frames.hpp"
#include "json.hpp"

namespace hyperball {

// Bad key, bad value, bad type. Maps to exit status 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WindowSpec {
    std::string kind = "gaussian";  // gaussian | polynomial
    double beta = 4.0;
    double sigma = 4.0;
};

struct FrameSpec {
    std::vector<double> deltas{0.5, 0.25};
    std::vector<double> hs{0.5, 0.25};
    double Lambda = 16.0;
    double T_work = 2.0;
    double zeta0 = 0.0;
    BallGridSpec grid{2.0, 64, 256};
    FrameOperatorSpec op{};
    double tol = 1e-6;
    int max_iter = 50;
    int signals = 20;
    std::string p = "2";
    int probes = 3;
    // coarse signal and phase grids for coorbit norms and the oscillation integral
    BallGridSpec coarse_grid{2.0, 40, 96};
    TranslationGridSpec coarse_translations{2.5, 10, 0.5, 6};
    SpectralGridSpec coarse_spectral{16.0, 49, 32};
    double ratio_limit = 0.0;  // A'/A guard; 0 = report only
};

struct NTermSpec {
    int sequences = 100;
    int length = 1000;
    std::vector<std::pair<double, double>> pq{{1.0, 2.0}, {2.0, 4.0}};
};

struct SchurSpec {
    TranslationGridSpec translations{1.2, 4, 0.8, 4};
    SpectralGridSpec spectral{6.0, 13, 8};
    BallGridSpec grid{3.5, 48, 96};
    int samples = 50;
};

struct ExperimentConfig {
    std::string experiment = "plancherel";
    std::uint64_t seed = 1;
    BallGridSpec ball_grid{};
    SpectralGridSpec spectral_grid{};
    BallGridSpec eval_region{1.1, 48, 128};
    BallGridSpec voice_grid{1.5, 72, 128};
    SpectralGridSpec voice_spectral{24.0, 97, 64};
    TranslationGridSpec translations{};
    WindowSpec window{};
    WindowSpec second_window{"polynomial", 4.0, 4.0};
    WeightSpec weight{};
    FrameSpec frame{};
    NTermSpec nterm{};
    SchurSpec schur{};
    // phase-space and coefficient CSVs run to millions of rows
    bool large_csv = false;
};

inline const std::vector<std::string>& experiment_ids() {
    static const std::vector<std::string> ids{"plancherel", "inversion", "orthogonality", "voice-roundtrip",
                                              "frame-sweep", "nterm", "schur"};
    return ids;
}

nlohmann::json default_config_json();
// Rejects unknown keys (the message names the full key path) and out-of-range values.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
// "frame.deltas=[0.5,0.25]", "seed=3": the value is parsed as JSON, bare words as strings.
void apply_override(nlohmann::json& j, const std::string& assignment);

Window make_window(const WindowSpec& w);

struct Assertion {
    std::string name;
    double threshold = 0.0;
    double value = 0.0;
    bool pass = false;
};

struct Report {
    std::string experiment;
    nlohmann::json config_echo;
    nlohmann::json metrics = nlohmann::json::object();
    std::vector<Assertion> assertions;
    double wall_time_s = 0.0;

    // value <= threshold
    void check_le(const std::string& name, double value, double threshold);
    // value >= threshold
    void check_ge(const std::string& name, double value, double threshold);
    bool all_pass() const;
    nlohmann::json to_json() const;
};

// Runs one experiment; CSV artifacts go to out_dir (created if missing). Numeric trouble surfaces as
// DomainError / ConvergenceError.
Report run_experiment(const ExperimentConfig& c, const std::filesystem::path& out_dir);

// 20-ish seeded bump signals for the frame-bound family.
std::vector<BumpFixture> random_bumps(std::size_t count, std::uint64_t seed);

}  // namespace hyperball
